"""
Core modules: field arithmetic, matrices, linear codes, bounds and locality.
"""

from lrckit.core.bounds import d_opt, is_almost_optimal, is_optimal, optimality_gap
from lrckit.core.code import LinearCode, minimum_distance
from lrckit.core.field import FieldElement, FieldSpec, field_from_order, field_new
from lrckit.core.locality import (
    LocalityStructure,
    LocalityVerdict,
    check_group_repairability,
    has_all_symbol_locality,
)
from lrckit.core.matrix import Matrix, cauchy_matrix, rank, rref

__all__ = [
    # Fields
    "FieldElement",
    "FieldSpec",
    "field_from_order",
    "field_new",
    # Matrices
    "Matrix",
    "cauchy_matrix",
    "rank",
    "rref",
    # Codes
    "LinearCode",
    "minimum_distance",
    # Bounds
    "d_opt",
    "is_almost_optimal",
    "is_optimal",
    "optimality_gap",
    # Locality
    "LocalityStructure",
    "LocalityVerdict",
    "check_group_repairability",
    "has_all_symbol_locality",
]
