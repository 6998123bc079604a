"""
Service layer: constructions, transforms and Monte Carlo experiments.
"""

from lrckit.services.construction import (
    GroupPlan,
    greedy_lrc,
    partition_lengths,
    random_lrc,
)
from lrckit.services.experiment import MonteCarloRow, monte_carlo
from lrckit.services.transforms import enlarge, find_deep_hole, puncture

__all__ = [
    # Constructions
    "GroupPlan",
    "greedy_lrc",
    "partition_lengths",
    "random_lrc",
    # Transforms
    "enlarge",
    "find_deep_hole",
    "puncture",
    # Experiments
    "MonteCarloRow",
    "monte_carlo",
]
