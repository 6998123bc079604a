"""Singleton-type bound for LRCs, Hamming sphere sizes and optimality checks.

Pure integer arithmetic; Python ints keep every value exact.
"""

from __future__ import annotations

import math

from lrckit.core.code import LinearCode
from lrckit.errors import InvalidParametersError


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def d_opt(n: int, k: int, r: int, delta: int) -> int:
    """n - k - (ceil(k/r) - 1)(delta - 1) + 1.

    Upper bound on the minimum distance of any [n, k] code with all-symbol
    (r, delta)-locality.
    """
    if not 1 <= k <= n:
        raise InvalidParametersError(f"need 1 <= k <= n, got n={n}, k={k}")
    if not 1 <= r <= k:
        raise InvalidParametersError(f"need 1 <= r <= k, got r={r}, k={k}")
    if delta < 2:
        raise InvalidParametersError(f"need delta >= 2, got {delta}")
    return n - k - (_ceil_div(k, r) - 1) * (delta - 1) + 1


def sphere_size(q: int, n: int, s: int) -> int:
    """V_q(n, s): number of vectors within Hamming distance s of a point."""
    if not 0 <= s <= n:
        raise InvalidParametersError(f"need 0 <= s <= n, got s={s}, n={n}")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(s + 1))


def sphere_size_upper_bound(q: int, n: int, s: int) -> int:
    """(1 + s) * C(n, floor(n/2)) * q^s, which dominates V_q(n, s)."""
    if not 0 <= s <= n:
        raise InvalidParametersError(f"need 0 <= s <= n, got s={s}, n={n}")
    return (1 + s) * math.comb(n, n // 2) * q**s


def counting_inequality_holds(q: int, n: int, k: int, d: int) -> bool:
    """|C| * V_q(n, d-1) < q^n for a code with q^k words.

    When true, some vector lies at distance >= d from every codeword.
    """
    if d < 1:
        return True
    return q**k * sphere_size(q, n, d - 1) < q**n


def deep_hole_guaranteed(q: int, n: int, d: int) -> bool:
    """Field-size condition q > d * C(n, floor(n/2)) under which the counting
    inequality holds for every [n, k, d] code with d <= n - k."""
    return q > d * math.comb(n, n // 2)


def optimality_gap(
    code: LinearCode, r: int, delta: int, *, distance: int | None = None, budget: int | None = None
) -> int:
    """d_opt(n, k, r, delta) - d. Pass ``distance`` to skip the enumeration."""
    d = code.minimum_distance(budget=budget) if distance is None else distance
    return d_opt(code.n, code.k, r, delta) - d


def is_optimal(
    code: LinearCode, r: int, delta: int, *, distance: int | None = None, budget: int | None = None
) -> bool:
    return optimality_gap(code, r, delta, distance=distance, budget=budget) == 0


def is_almost_optimal(
    code: LinearCode, r: int, delta: int, *, distance: int | None = None, budget: int | None = None
) -> bool:
    """Within delta - 1 of the bound."""
    return optimality_gap(code, r, delta, distance=distance, budget=budget) <= delta - 1


def optimal_after_puncture(k: int, r: int) -> bool:
    """Whether puncturing an optimal (delta = 2) code keeps it optimal.

    The punctured [n-1, k-1] code has d' >= d, and its bound equals d exactly
    when r does not divide k - 1.
    """
    if k < 2 or r < 1:
        raise InvalidParametersError(f"need k >= 2 and r >= 1, got k={k}, r={r}")
    return (k - 1) % r != 0


def enlargement_preserves_optimality(k: int, r: int) -> bool:
    """r in [k/2, k): enlarging an optimal code with d = n - k keeps it optimal,
    since ceil(k/r) = ceil((k+1)/(r+1)) = 2 on both sides."""
    return 2 * r >= k and r < k
