"""Repair-group checks and all-symbol locality."""

import itertools
import logging

import numpy as np
import pytest

from lrckit.core.code import LinearCode
from lrckit.core.field import FieldSpec, field_new
from lrckit.core.locality import (
    LocalityStructure,
    check_group_repairability,
    has_all_symbol_locality,
)
from lrckit.core.matrix import Matrix, cauchy_matrix
from lrckit.errors import BudgetExceededError, InvalidParametersError


def _reed_solomon_gf7() -> LinearCode:
    rows = [[pow(x, i, 7) for x in range(1, 7)] for i in range(3)]
    return LinearCode.from_ints(field_new(7), rows)


def _systematic_group(field: FieldSpec, t: int, c: int, seed: int) -> LinearCode:
    rng = np.random.default_rng(seed)
    x = Matrix.random(field, t, t, rng)
    while x.rank() < t:
        x = Matrix.random(field, t, t, rng)
    return LinearCode(x @ Matrix.identity(field, t).hstack(cauchy_matrix(field, t, c)))


# ─── LocalityStructure ──────────────────────────────────────────────────────


def test_structure_sorts_and_reports_sizes() -> None:
    s = LocalityStructure.build(5, [[4, 3, 2], [1, 0]], 2, 2)
    assert s.groups == ((2, 3, 4), (0, 1))
    assert s.sizes == [3, 2]
    assert s.group_of(3) == (2, 3, 4)


def test_structure_must_partition_positions() -> None:
    with pytest.raises(InvalidParametersError, match="more than one group"):
        LocalityStructure.build(4, [[0, 1], [1, 2, 3]], 2, 2)
    with pytest.raises(InvalidParametersError, match="partition"):
        LocalityStructure.build(4, [[0, 1], [2]], 2, 2, [])
    with pytest.raises(InvalidParametersError, match="partition"):
        LocalityStructure.build(3, [[0, 1], [2, 3]], 2, 2)


def test_structure_group_sizes_bounded() -> None:
    with pytest.raises(InvalidParametersError, match="outside"):
        LocalityStructure.build(5, [[0, 1, 2, 3], [4]], 2, 2)
    with pytest.raises(InvalidParametersError, match="outside"):
        LocalityStructure.build(3, [[0], [1, 2]], 2, 2)


def test_zero_positions_are_their_own_group() -> None:
    s = LocalityStructure.build(5, [[0, 1], [2, 3]], 2, 1, [4])
    assert s.group_of(4) == (4,)


# ─── check_group_repairability ──────────────────────────────────────────────


def test_repeated_column_group_is_repairable(gf2: FieldSpec) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    assert check_group_repairability(code, [0, 1], 2)
    assert check_group_repairability(code, [2, 3], 2)
    assert not check_group_repairability(code, [1, 2], 2)


def test_group_with_a_zero_column_is_not_repairable(gf3: FieldSpec) -> None:
    code = LinearCode.from_ints(gf3, [[1, 0, 1, 1], [0, 0, 1, 1]])
    assert not check_group_repairability(code, [0, 1], 2)
    assert check_group_repairability(code, [2, 3], 2)


def test_all_zero_group_counts_as_repairable(gf3: FieldSpec) -> None:
    code = LinearCode.from_ints(gf3, [[1, 1, 0], [0, 1, 0]])
    assert check_group_repairability(code, [2], 2)


def test_empty_group_rejected(gf2: FieldSpec) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1]])
    with pytest.raises(InvalidParametersError):
        check_group_repairability(code, [], 2)


@pytest.mark.parametrize("t,c", [(2, 1), (3, 2), (2, 3)])
def test_systematic_cauchy_group_tolerates_c_erasures(gf13: FieldSpec, t: int, c: int) -> None:
    code = _systematic_group(gf13, t, c, seed=t * 10 + c)
    group = list(range(t + c))
    assert check_group_repairability(code, group, c + 1)
    assert not check_group_repairability(code, group, c + 2)


def test_repairable_group_recovers_any_delta_minus_one_erasures(gf13: FieldSpec) -> None:
    t, c = 3, 2
    code = _systematic_group(gf13, t, c, seed=4)
    g = code.generator
    assert check_group_repairability(code, range(t + c), c + 1)
    for erased in itertools.combinations(range(t + c), c):
        kept = [j for j in range(t + c) if j not in erased]
        # Every erased column lies in the span of the surviving ones.
        assert g.columns(kept).rank() == g.columns(kept + list(erased)).rank()


# ─── has_all_symbol_locality ────────────────────────────────────────────────


def test_replication_code_has_locality_one(gf2: FieldSpec) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    verdict = has_all_symbol_locality(code, 1, 2)
    assert verdict
    assert verdict.witnesses == {0: (0, 1), 1: (0, 1), 2: (2, 3), 3: (2, 3)}


def test_identity_code_has_no_locality(gf2: FieldSpec) -> None:
    verdict = has_all_symbol_locality(LinearCode(Matrix.identity(gf2, 3)), 1, 2)
    assert not verdict
    assert verdict.failing_symbol == 0


def test_mds_code_has_locality_k() -> None:
    code = _reed_solomon_gf7()
    verdict = has_all_symbol_locality(code, 3, 2)
    assert verdict
    assert all(len(w) == 4 for w in verdict.witnesses.values())
    assert not has_all_symbol_locality(code, 2, 2)


def test_hint_checks_only_its_groups(gf2: FieldSpec) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    hint = LocalityStructure.build(4, [[0, 1], [2, 3]], 2, 1)
    verdict = has_all_symbol_locality(code, 1, 2, hint=hint)
    assert verdict
    assert verdict.structure == hint

    wrong = LocalityStructure.build(4, [[0, 2], [1, 3]], 2, 1)
    assert not has_all_symbol_locality(code, 1, 2, hint=wrong)


def test_rejected_hint_is_logged_as_a_warning(
    gf2: FieldSpec, caplog: pytest.LogCaptureFixture
) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    wrong = LocalityStructure.build(4, [[0, 2], [1, 3]], 2, 1)
    with caplog.at_level(logging.WARNING, logger="lrckit.core.locality"):
        assert not has_all_symbol_locality(code, 1, 2, hint=wrong)
    assert [r.levelno for r in caplog.records] == [logging.WARNING]
    assert "group [0, 2] fails (1, 2) repairability" in caplog.text


def test_hint_group_larger_than_locality_fails(gf2: FieldSpec) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    loose = LocalityStructure.build(4, [[0, 1, 2, 3]], 2, 3)
    assert has_all_symbol_locality(code, 3, 2, hint=loose)
    assert not has_all_symbol_locality(code, 1, 2, hint=loose)


def test_hint_zero_positions_must_be_zero_columns(gf3: FieldSpec) -> None:
    code = LinearCode.from_ints(gf3, [[1, 1, 0, 0, 0], [0, 0, 1, 1, 0]])
    good = LocalityStructure.build(5, [[0, 1], [2, 3]], 2, 1, [4])
    assert has_all_symbol_locality(code, 1, 2, hint=good)

    other = LinearCode.from_ints(gf3, [[1, 1, 0, 0, 1], [0, 0, 1, 1, 0]])
    verdict = has_all_symbol_locality(other, 1, 2, hint=good)
    assert not verdict
    assert verdict.failing_symbol == 4


def test_hint_must_match_code_length(gf2: FieldSpec) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    with pytest.raises(InvalidParametersError):
        has_all_symbol_locality(code, 1, 2, hint=LocalityStructure.build(2, [[0, 1]], 2, 1))


def test_search_witnesses_zero_columns_by_themselves(gf3: FieldSpec) -> None:
    code = LinearCode.from_ints(gf3, [[1, 1, 0, 0, 0], [0, 0, 1, 1, 0]])
    verdict = has_all_symbol_locality(code, 1, 2)
    assert verdict
    assert verdict.witnesses[4] == (4,)


def test_search_budget_is_enforced() -> None:
    with pytest.raises(BudgetExceededError):
        has_all_symbol_locality(_reed_solomon_gf7(), 3, 2, budget=10)


def test_locality_parameters_validated(gf2: FieldSpec) -> None:
    code = LinearCode.from_ints(gf2, [[1, 1]])
    with pytest.raises(InvalidParametersError):
        has_all_symbol_locality(code, 0, 2)
    with pytest.raises(InvalidParametersError):
        has_all_symbol_locality(code, 1, 1)
