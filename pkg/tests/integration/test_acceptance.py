"""End-to-end construction, transform and experiment runs at desk scale.

The unit tests pin each operation on tiny codes. These drive the real
constructions at the parameter sets the toolkit is meant for and check
every guarantee on the resulting codes by exhaustive enumeration:
  * full groups (n = A(r + delta - 1)) give optimal codes,
  * a remainder group gives almost-optimal codes,
  * a remainder too small for a group becomes a zero column,
  * delta = 3 groups survive any two erasures,
  * puncturing keeps n - 1, k - 1, d and locality, and stays optimal
    exactly when r does not divide k - 1,
  * enlarging an optimal code with r in [k/2, k) stays optimal,
  * random-construction success rates climb with the field size.
"""

from collections.abc import Callable
from typing import Any

import pytest

from lrckit.core.bounds import (
    d_opt,
    enlargement_preserves_optimality,
    is_almost_optimal,
    is_optimal,
    optimal_after_puncture,
)
from lrckit.core.code import LinearCode
from lrckit.core.field import field_new
from lrckit.core.locality import (
    LocalityStructure,
    check_group_repairability,
    has_all_symbol_locality,
)
from lrckit.services.construction import GroupPlan, greedy_lrc, random_lrc
from lrckit.services.experiment import monte_carlo
from lrckit.services.transforms import enlarge, puncture, puncture_locality, punctured_bound

pytestmark = pytest.mark.slow

GF13 = field_new(13)
GF31 = field_new(31)


def _check_puncture(code: LinearCode, structure: LocalityStructure, r: int) -> LinearCode:
    d = code.minimum_distance()
    smaller = puncture(code, 0)
    assert smaller.n == code.n - 1
    assert smaller.k >= code.k - 1
    assert smaller.minimum_distance() >= d
    carried = puncture_locality(structure, 0, smaller)
    assert has_all_symbol_locality(smaller, r, structure.delta, hint=carried)
    return smaller


@pytest.mark.parametrize("builder,attempts", [(random_lrc, 46), (greedy_lrc, 1)])
def test_full_groups_are_optimal_and_stay_optimal_when_punctured(
    builder: Callable[..., Any], attempts: int
) -> None:
    code, structure, report = builder(12, 5, 3, 2, GF31, seed=2024)
    assert structure.sizes == [4, 4, 4]
    assert has_all_symbol_locality(code, 3, 2, hint=structure)
    assert code.minimum_distance() == 7 == d_opt(12, 5, 3, 2)
    assert report.is_optimal
    # A single random draw reaches d = 7 only a few percent of the time.
    assert report.attempts == attempts

    smaller = _check_puncture(code, structure, 3)
    # 3 does not divide k - 1 = 4: the [11, 4] result meets its own bound.
    assert optimal_after_puncture(5, 3)
    assert smaller.k == 4
    assert smaller.minimum_distance() == punctured_bound(12, 5, 3) == 7
    assert is_optimal(smaller, 3, 2)


@pytest.mark.parametrize("builder", [random_lrc, greedy_lrc])
def test_remainder_group_is_almost_optimal(builder: Callable[..., Any]) -> None:
    code, structure, report = builder(10, 5, 3, 2, GF31, seed=7)
    assert structure.sizes == [2, 4, 4]
    d = code.minimum_distance()
    assert d >= 4
    assert d_opt(10, 5, 3, 2) - d <= 1
    assert is_almost_optimal(code, 3, 2, distance=d)
    _check_puncture(code, structure, 3)


@pytest.mark.parametrize("builder", [random_lrc, greedy_lrc])
def test_short_remainder_becomes_a_zero_column(builder: Callable[..., Any]) -> None:
    code, structure, report = builder(9, 5, 3, 2, GF31, seed=11)
    assert structure.zero_positions == (8,)
    assert code.minimum_distance() == d_opt(9, 5, 3, 2) - 1
    assert report.zero_columns == 1
    _check_puncture(code, structure, 3)


def test_local_distance_three_groups() -> None:
    code, structure, _ = random_lrc(10, 4, 3, 3, GF13, seed=13)
    assert structure.sizes == [5, 5]
    for group in structure.groups:
        assert check_group_repairability(code, group, 3)
    assert code.minimum_distance() >= 10 - 4 - 1 * 2 + 1
    _check_puncture(code, structure, 3)


def test_enlarging_an_optimal_code_keeps_it_optimal() -> None:
    code, structure, _ = random_lrc(8, 4, 3, 2, GF13, seed=17)
    assert code.minimum_distance() == 4
    assert enlargement_preserves_optimality(4, 3)

    bigger, report = enlarge(code, 3, hint=structure, seed=17, max_attempts=20000)
    assert (bigger.n, bigger.k) == (9, 5)
    assert bigger.minimum_distance() == 4
    assert has_all_symbol_locality(bigger, 4, 2)
    assert report.d_opt == d_opt(9, 5, 4, 2) == 4
    assert report.is_optimal

    back = puncture(bigger, bigger.n - 1)
    assert back == code


def test_success_rate_grows_with_field_size() -> None:
    plan = GroupPlan((4, 4), 3, 2)
    fields = [field_new(q) for q in (2, 5, 13, 101)]
    rows = monte_carlo(8, 4, 3, 2, plan, fields, trials=200, seed=2024)
    by_q = {row.q: row for row in rows}
    assert all(row.bound == 4 and row.d_opt == 4 for row in rows)
    # Single-draw failure is about 8/q, so roughly 0.92 at q = 101.
    assert by_q[101].rate >= 0.9
    spread = 2 * (by_q[101].standard_error + by_q[2].standard_error)
    assert by_q[101].rate - by_q[2].rate > spread
    for low, high in zip(rows, rows[1:]):
        assert high.rate >= low.rate - 2 / 200**0.5
