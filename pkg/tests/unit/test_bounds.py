"""Singleton-type bound, sphere sizes and optimality predicates."""

import itertools
import math

import pytest

from lrckit.core.bounds import (
    counting_inequality_holds,
    d_opt,
    deep_hole_guaranteed,
    enlargement_preserves_optimality,
    is_almost_optimal,
    is_optimal,
    optimal_after_puncture,
    optimality_gap,
    sphere_size,
    sphere_size_upper_bound,
)
from lrckit.core.code import LinearCode
from lrckit.core.field import FieldSpec
from lrckit.errors import InvalidParametersError


@pytest.mark.parametrize(
    "n,k,r,delta,expected",
    [
        (12, 5, 3, 2, 7),
        (11, 4, 3, 2, 7),
        (8, 4, 3, 2, 4),
        (10, 5, 3, 2, 5),
        (9, 5, 3, 2, 4),
        (10, 4, 3, 3, 5),
        (9, 5, 4, 2, 4),
        (4, 2, 1, 2, 2),
    ],
)
def test_d_opt_values(n: int, k: int, r: int, delta: int, expected: int) -> None:
    assert d_opt(n, k, r, delta) == expected


@pytest.mark.parametrize("n,k", [(6, 3), (10, 4), (5, 5)])
def test_d_opt_reduces_to_singleton_when_r_equals_k(n: int, k: int) -> None:
    for delta in (2, 3):
        assert d_opt(n, k, k, delta) == n - k + 1


@pytest.mark.parametrize(
    "n,k,r,delta", [(4, 5, 1, 2), (4, 0, 1, 2), (6, 3, 0, 2), (6, 3, 4, 2), (6, 3, 2, 1)]
)
def test_d_opt_rejects_out_of_range_parameters(n: int, k: int, r: int, delta: int) -> None:
    with pytest.raises(InvalidParametersError):
        d_opt(n, k, r, delta)


def test_sphere_sizes() -> None:
    assert sphere_size(2, 3, 0) == 1
    assert sphere_size(2, 3, 1) == 4
    assert sphere_size(2, 3, 3) == 8
    assert sphere_size(3, 4, 2) == 1 + 8 + 24


@pytest.mark.parametrize("q", [2, 3])
def test_sphere_size_matches_brute_force(q: int) -> None:
    for n in range(1, 6):
        for s in range(n + 1):
            count = sum(
                1
                for v in itertools.product(range(q), repeat=n)
                if sum(1 for x in v if x) <= s
            )
            assert sphere_size(q, n, s) == count


def test_sphere_size_upper_bound_dominates() -> None:
    for q, n in itertools.product((2, 3, 5, 13, 31), range(1, 13)):
        for s in range(n + 1):
            assert sphere_size(q, n, s) <= sphere_size_upper_bound(q, n, s)


def test_sphere_size_rejects_bad_radius() -> None:
    with pytest.raises(InvalidParametersError):
        sphere_size(2, 3, 4)


def test_counting_inequality() -> None:
    assert counting_inequality_holds(7, 4, 1, 3)  # 7 * 241 < 2401
    assert not counting_inequality_holds(3, 4, 2, 2)  # 9 * 9 == 81
    assert counting_inequality_holds(2, 3, 0, 3)


def test_large_fields_guarantee_deep_holes_for_non_mds_codes() -> None:
    for n in range(3, 9):
        for d in range(1, n):
            q = d * math.comb(n, n // 2) + 1
            assert deep_hole_guaranteed(q, n, d)
            for k in range(1, n - d + 1):
                assert counting_inequality_holds(q, n, k, d)
    assert not deep_hole_guaranteed(7, 4, 2)


def test_optimality_predicates(replication_gf3: LinearCode, gf3: FieldSpec) -> None:
    assert is_optimal(replication_gf3, 1, 2)
    assert optimality_gap(replication_gf3, 1, 2) == 0

    parity = LinearCode.from_ints(gf3, [[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
    assert is_optimal(parity, 3, 2)

    assert optimality_gap(replication_gf3, 1, 2, distance=1) == 1
    assert not is_optimal(replication_gf3, 1, 2, distance=1)
    assert is_almost_optimal(replication_gf3, 1, 2, distance=1)
    assert not is_almost_optimal(replication_gf3, 1, 2, distance=0)


def test_puncture_optimality_rule() -> None:
    assert optimal_after_puncture(5, 3)  # (12,5) -> (11,4): 3 does not divide 4
    assert not optimal_after_puncture(4, 3)
    assert not optimal_after_puncture(7, 2)
    for k, r in itertools.product(range(2, 12), range(1, 6)):
        if r >= k:
            continue
        # An optimal [n, k] code with d = d_opt keeps d' = d after puncturing
        n = k + 6
        d = d_opt(n, k, r, 2)
        assert optimal_after_puncture(k, r) == (d == d_opt(n - 1, k - 1, min(r, k - 1), 2))


def test_enlargement_optimality_rule() -> None:
    assert enlargement_preserves_optimality(4, 3)
    assert enlargement_preserves_optimality(4, 2)
    assert not enlargement_preserves_optimality(5, 2)
    assert not enlargement_preserves_optimality(4, 4)
    for k, r in itertools.product(range(2, 12), range(1, 12)):
        if r >= k:
            continue
        n = k + 6
        d = d_opt(n, k, r, 2)
        if enlargement_preserves_optimality(k, r):
            assert d == d_opt(n + 1, k + 1, r + 1, 2), (k, r)
