"""
Code-to-code transformations: enlargement and puncturing.

enlarge turns an [n, k, d] code with (r, 2)-locality into an [n+1, k+1, d]
code with (r+1, 2)-locality by bordering the generator with a vector x at
distance >= d from every codeword:

    G' = | G  0 |
         | x  1 |

A message with a zero last coordinate gives (c | 0), weight >= d. Otherwise
the word is a·(x + c/a | 1), whose weight is at least d(x, C) + 1 >= d + 1.
Locality of the new symbol isn't guaranteed in general, so every output is
verified before it is returned; a failing candidate x is skipped in favour of
the next one.

puncture keeps the subcode that is zero at one coordinate and deletes that
coordinate: n' = n - 1, k' >= k - 1, d' >= d.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt

from lrckit.config import get_settings, resolve
from lrckit.core.bounds import counting_inequality_holds, d_opt, sphere_size
from lrckit.core.code import (
    CHUNK,
    IntArray,
    LinearCode,
    _digits,
    codewords,
    distance_to_code,
)
from lrckit.core.locality import LocalityStructure, LocalityVerdict, has_all_symbol_locality
from lrckit.core.matrix import Matrix
from lrckit.errors import (
    DeepHoleNotFoundError,
    DimensionError,
    InvalidParametersError,
    VerificationError,
    check_budget,
)

logger = logging.getLogger(__name__)

Strategy = Literal["auto", "exhaustive", "sampled"]


# ─── deep holes ─────────────────────────────────────────────────────────────


def default_max_attempts(q: int, n: int, d: int) -> int:
    """64·d·C(n, floor(n/2)) / q, clamped to [100, 10^6]."""
    raw = 64 * d * math.comb(n, n // 2) // q
    return max(100, min(10**6, raw))


def _field_add(code: LinearCode, a: IntArray, b: IntArray) -> IntArray:
    f = code.field
    if f.is_prime_field:
        return (a + b) % f.characteristic
    return (f.gf(a) + f.gf(b)).view(np.ndarray).astype(np.int64)


def _covered(code: LinearCode, radius: int) -> npt.NDArray[np.bool_]:
    """Mask over F_q^n (lexicographic index) of vectors within ``radius`` of
    some codeword: every codeword plus every error pattern of weight <= radius."""
    q, n = code.field.order, code.n
    place = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    words = codewords(code)
    base = words @ place
    mask = np.zeros(q**n, dtype=bool)
    mask[base] = True
    for w in range(1, radius + 1):
        values = _digits(np.arange((q - 1) ** w, dtype=np.int64), q - 1, w) + 1
        per_chunk = max(1, CHUNK // len(values))
        for positions in itertools.combinations(range(n), w):
            pos = list(positions)
            for start in range(0, len(words), per_chunk):
                old = words[start : start + per_chunk][:, pos]
                new = _field_add(code, old[:, np.newaxis, :], values[np.newaxis, :, :])
                shift = ((new - old[:, np.newaxis, :]) * place[pos]).sum(axis=-1)
                mask[(base[start : start + per_chunk, np.newaxis] + shift).ravel()] = True
    return mask


def _exhaustive_holes(code: LinearCode, d: int, budget: int | None) -> Iterator[IntArray]:
    q, n = code.field.order, code.n
    limit = resolve(budget, get_settings().budget_vectors)
    check_budget("ambient vectors", q**n, limit)
    # Marking the balls around all codewords costs |C|·V_q(n, d-1), which is
    # below q^n exactly when the counting inequality holds.
    check_budget("covering work", q**code.k * sphere_size(q, n, d - 1), limit)
    if not counting_inequality_holds(q, n, code.k, d):
        logger.info(
            f"counting inequality fails for q={q}, n={n}, k={code.k}, d={d}; "
            "exhaustive search may come up empty"
        )
    mask = _covered(code, d - 1)
    for index in np.flatnonzero(~mask):
        yield _digits(np.array([index], dtype=np.int64), q, n)[0]


def _sampled_holes(
    code: LinearCode, d: int, seed: int | None, max_attempts: int | None
) -> Iterator[IntArray]:
    q, n = code.field.order, code.n
    attempts = default_max_attempts(q, n, d) if max_attempts is None else max_attempts
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        x = rng.integers(0, q, size=n, dtype=np.int64)
        if distance_to_code(code, x) >= d:
            yield x


def iter_deep_holes(
    code: LinearCode,
    d: int,
    *,
    strategy: Strategy = "sampled",
    seed: int | None = None,
    max_attempts: int | None = None,
    budget: int | None = None,
) -> Iterator[IntArray]:
    """Vectors at distance >= d from the code.

    ``exhaustive`` walks F_q^n in lexicographic order; ``sampled`` draws
    uniform vectors and is the default. ``auto`` is exhaustive when q^n fits
    the vector budget.
    """
    if d < 1:
        raise InvalidParametersError(f"deep-hole distance must be >= 1, got {d}")
    if strategy == "auto":
        limit = resolve(budget, get_settings().budget_vectors)
        strategy = "exhaustive" if code.field.order**code.n <= limit else "sampled"
    if strategy == "exhaustive":
        return _exhaustive_holes(code, d, budget)
    if strategy == "sampled":
        return _sampled_holes(code, d, seed, max_attempts)
    raise InvalidParametersError(f"unknown deep-hole strategy {strategy!r}")


def find_deep_hole(
    code: LinearCode,
    d: int,
    *,
    strategy: Strategy = "sampled",
    seed: int | None = None,
    max_attempts: int | None = None,
    budget: int | None = None,
) -> IntArray:
    for x in iter_deep_holes(
        code, d, strategy=strategy, seed=seed, max_attempts=max_attempts, budget=budget
    ):
        return x
    raise DeepHoleNotFoundError(
        f"no vector at distance >= {d} from the [{code.n}, {code.k}] code over {code.field} "
        f"({strategy} search)"
    )


# ─── enlarge ────────────────────────────────────────────────────────────────


@dataclass
class EnlargeReport:
    deep_hole: list[int]
    distance: int
    r: int
    d_opt: int
    is_optimal: bool
    candidates_tried: int
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)


def bordered_code(code: LinearCode, x: IntArray) -> LinearCode:
    """Generator [[G, 0], [x, 1]]."""
    g = code.generator
    top = g.hstack(Matrix.zeros(code.field, code.k, 1))
    bottom = Matrix.from_ints(code.field, [[*(int(v) for v in x), 1]])
    return LinearCode(top.vstack(bottom))


def enlarge(
    code: LinearCode,
    r: int,
    *,
    seed: int | None = None,
    hint: LocalityStructure | None = None,
    strategy: Strategy = "sampled",
    max_attempts: int | None = None,
) -> tuple[LinearCode, EnlargeReport]:
    """[n, k, d] with (r, 2)-locality -> verified [n+1, k+1, d] with (r+1, 2)-locality."""
    if not 1 <= r < code.k:
        raise InvalidParametersError(f"enlarge needs 1 <= r < k, got r={r}, k={code.k}")
    verdict = has_all_symbol_locality(code, r, 2, hint=hint)
    if not verdict:
        raise InvalidParametersError(
            f"input code lacks ({r}, 2)-locality (symbol {verdict.failing_symbol})"
        )
    d = code.minimum_distance()

    tried = 0
    for x in iter_deep_holes(code, d, strategy=strategy, seed=seed, max_attempts=max_attempts):
        tried += 1
        bigger = bordered_code(code, x)
        d_new = bigger.minimum_distance()
        if d_new != d:
            raise VerificationError(
                f"bordered code has distance {d_new}, expected exactly {d} (x={x.tolist()})"
            )
        local: LocalityVerdict = has_all_symbol_locality(bigger, r + 1, 2)
        if not local:
            logger.warning(f"deep hole {x.tolist()} breaks ({r + 1}, 2)-locality; trying next")
            continue
        bound = d_opt(bigger.n, bigger.k, r + 1, 2)
        logger.info(
            f"enlarged [{code.n}, {code.k}, {d}] to [{bigger.n}, {bigger.k}, {d_new}] "
            f"after {tried} candidate(s)"
        )
        return bigger, EnlargeReport(
            deep_hole=[int(v) for v in x],
            distance=d_new,
            r=r + 1,
            d_opt=bound,
            is_optimal=d_new == bound,
            candidates_tried=tried,
            witnesses=local.witnesses,
        )

    if tried == 0:
        raise DeepHoleNotFoundError(
            f"no vector at distance >= {d} from the [{code.n}, {code.k}] code over {code.field}"
        )
    raise VerificationError(
        f"all {tried} deep-hole candidate(s) produced codes without ({r + 1}, 2)-locality"
    )


# ─── puncture ───────────────────────────────────────────────────────────────


def puncture(code: LinearCode, coordinate: int = 0) -> LinearCode:
    """Subcode vanishing at ``coordinate``, with that coordinate deleted."""
    if code.n < 2:
        raise InvalidParametersError("puncturing needs n >= 2")
    if not 0 <= coordinate < code.n:
        raise DimensionError(f"coordinate {coordinate} out of range [0, {code.n})")

    g = code.generator.array
    col = g[:, coordinate].view(np.ndarray)
    nonzero = np.flatnonzero(col)
    if nonzero.size:
        pivot = int(nonzero[0])
        for row in nonzero[1:]:
            g[row] = g[row] - (g[row, coordinate] / g[pivot, coordinate]) * g[pivot]
        g = g[[i for i in range(g.shape[0]) if i != pivot]]
    if g.shape[0] == 0:
        raise InvalidParametersError(
            f"puncturing coordinate {coordinate} of a k=1 code leaves only the zero code"
        )
    reduced = Matrix(code.field, g).delete_column(coordinate)
    return LinearCode(reduced)


def puncture_locality(
    structure: LocalityStructure, coordinate: int, punctured: LinearCode
) -> LocalityStructure:
    """Carry a locality structure through puncture(): drop the coordinate,
    shift later indices down, and move groups whose columns all vanished to
    the zero positions."""
    if structure.n != punctured.n + 1:
        raise InvalidParametersError(
            f"structure has n={structure.n}, punctured code has n={punctured.n}"
        )

    def shift(i: int) -> int:
        return i - 1 if i > coordinate else i

    zero_cols = set(punctured.generator.zero_columns())
    groups: list[list[int]] = []
    zeros = [shift(i) for i in structure.zero_positions if i != coordinate]
    for g in structure.groups:
        kept = [shift(i) for i in g if i != coordinate]
        if not kept:
            continue
        if all(i in zero_cols for i in kept):
            zeros.extend(kept)
        else:
            groups.append(kept)
    return LocalityStructure.build(punctured.n, groups, structure.delta, structure.r, zeros)


def punctured_bound(n: int, k: int, r: int, delta: int = 2) -> int:
    """d_opt of the [n-1, k-1] punctured parameters."""
    return d_opt(n - 1, k - 1, min(r, k - 1), delta)
