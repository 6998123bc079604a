"""
LinearCode and the message-space enumeration behind every distance check.

Minimum distance is computed as the minimum weight of e·G over nonzero
messages e. Scaling a message by a nonzero scalar scales its codeword without
changing the weight, so only messages whose first nonzero entry is 1 are
walked: (q^k - 1) / (q - 1) of them instead of q^k - 1. The budget guard
applies to that count.

Enumeration runs in numpy chunks. Prime fields multiply plain int64 arrays and
reduce mod p (entries stay far below 2^63 for q <= 2^20); extension fields go
through galois. Chunks can be fanned out over a process pool with a min
reduction.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from concurrent.futures import FIRST_COMPLETED, Future, ProcessPoolExecutor, wait
from typing import Any

import numpy as np
import numpy.typing as npt

from lrckit.config import get_settings, resolve
from lrckit.core.field import FieldSpec
from lrckit.core.matrix import Matrix
from lrckit.errors import DimensionError, InvalidParametersError, check_budget

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[np.int64]

# Messages per enumeration chunk.
CHUNK = 1 << 15


def evaluate(field: FieldSpec, left: IntArray, right: IntArray) -> IntArray:
    """Integer-encoded product ``left @ right`` over ``field``."""
    if field.is_prime_field:
        return (left @ right) % field.characteristic
    gf = field.gf
    return (gf(left) @ gf(right)).view(np.ndarray).astype(np.int64)


def _digits(indices: IntArray, q: int, width: int) -> IntArray:
    """Base-q digits of ``indices``, most significant first."""
    if width == 0:
        return np.zeros((len(indices), 0), dtype=np.int64)
    powers = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (indices[:, np.newaxis] // powers[np.newaxis, :]) % q


def normalized_message_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def _normalized_block(field: FieldSpec, k: int, leader: int, start: int, stop: int) -> IntArray:
    """Messages with zeros before ``leader``, a 1 at ``leader`` and free
    entries after it, for free-part indices in [start, stop)."""
    q = field.order
    free = k - 1 - leader
    idx = np.arange(start, stop, dtype=np.int64)
    block = np.zeros((len(idx), k), dtype=np.int64)
    block[:, leader] = 1
    block[:, leader + 1 :] = _digits(idx, q, free)
    return block


def _work_units(q: int, k: int) -> Iterator[tuple[int, int, int]]:
    for leader in range(k):
        total = q ** (k - 1 - leader)
        for start in range(0, total, CHUNK):
            yield leader, start, min(start + CHUNK, total)


def enumerate_messages(
    field: FieldSpec, k: int, *, normalized: bool = True, budget: int | None = None
) -> IntArray:
    """All nonzero normalized messages (or all q^k messages) as rows."""
    q = field.order
    limit = resolve(budget, get_settings().budget_messages)
    if normalized:
        check_budget("normalized messages", normalized_message_count(q, k), limit)
        blocks = [_normalized_block(field, k, *unit) for unit in _work_units(q, k)]
        return np.vstack(blocks) if blocks else np.zeros((0, k), dtype=np.int64)
    check_budget("messages", q**k, limit)
    return _digits(np.arange(q**k, dtype=np.int64), q, k)


def _chunk_min_weight(
    field: FieldSpec, generator: IntArray, leader: int, start: int, stop: int
) -> int:
    k = generator.shape[0]
    words = evaluate(field, _normalized_block(field, k, leader, start, stop), generator)
    return int(np.count_nonzero(words, axis=1).min())


def minimum_weight(
    generator: Matrix,
    *,
    budget: int | None = None,
    workers: int | None = None,
    stop_below: int | None = None,
) -> int:
    """Minimum weight of e·G over nonzero messages e.

    Works on any generator, full rank or not; a rank-deficient one has
    weight 0. With ``stop_below`` the walk ends at the first chunk whose
    minimum is below that threshold and returns that (non-exact) value.
    """
    settings = get_settings()
    field = generator.field
    k = generator.rows
    if k == 0:
        raise InvalidParametersError("minimum weight of an empty generator")
    count = normalized_message_count(field.order, k)
    check_budget("normalized messages", count, resolve(budget, settings.budget_messages))
    n_workers = resolve(workers, settings.workers)
    gen = generator.ints()
    logger.debug(f"enumerating {count} messages over {field} (k={k}, workers={n_workers})")

    best = generator.cols
    if n_workers <= 1:
        for unit in _work_units(field.order, k):
            best = min(best, _chunk_min_weight(field, gen, *unit))
            if stop_below is not None and best < stop_below:
                return best
        return best

    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        pending: set[Future[int]] = {
            pool.submit(_chunk_min_weight, field, gen, *unit)
            for unit in _work_units(field.order, k)
        }
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                best = min(best, fut.result())
            if stop_below is not None and best < stop_below:
                for fut in pending:
                    fut.cancel()
                break
    return best


def all_codewords(
    field: FieldSpec, generator: IntArray, *, budget: int | None = None
) -> IntArray:
    """Every codeword of the row space (with multiplicity 1 per message)."""
    k = generator.shape[0]
    messages = enumerate_messages(field, k, normalized=False, budget=budget)
    return evaluate(field, messages, generator)


class LinearCode:
    """A linear [n, k] code given by a full-row-rank k x n generator matrix.

    Zero columns are allowed; rank k is not negotiable.
    """

    __slots__ = ("generator",)

    def __init__(self, generator: Matrix) -> None:
        k, n = generator.shape
        if k < 1:
            raise InvalidParametersError("a linear code needs dimension k >= 1")
        if k > n:
            raise InvalidParametersError(f"dimension k={k} exceeds length n={n}")
        rk = generator.rank()
        if rk != k:
            raise InvalidParametersError(f"generator has rank {rk}, expected k={k}")
        self.generator = generator

    @classmethod
    def from_ints(cls, field: FieldSpec, rows: list[list[int]]) -> LinearCode:
        return cls(Matrix.from_ints(field, rows))

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def field(self) -> FieldSpec:
        return self.generator.field

    def minimum_distance(
        self,
        *,
        budget: int | None = None,
        workers: int | None = None,
        stop_below: int | None = None,
    ) -> int:
        return minimum_weight(
            self.generator, budget=budget, workers=workers, stop_below=stop_below
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.generator == other.generator

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"


def minimum_distance(
    code: LinearCode,
    *,
    budget: int | None = None,
    workers: int | None = None,
    stop_below: int | None = None,
) -> int:
    return code.minimum_distance(budget=budget, workers=workers, stop_below=stop_below)


def codewords(code: LinearCode, *, budget: int | None = None) -> IntArray:
    """All q^k codewords, integer-encoded, one per row."""
    return all_codewords(code.field, code.generator.ints(), budget=budget)


def distance_to_code(code: LinearCode, x: Any, *, budget: int | None = None) -> int:
    """min over codewords c of d(x, c). Enumerates all q^k messages."""
    vec = np.asarray(x, dtype=np.int64).reshape(-1)
    if vec.shape[0] != code.n:
        raise DimensionError(f"vector of length {vec.shape[0]} against a length-{code.n} code")
    q = code.field.order
    check_budget("messages", q**code.k, resolve(budget, get_settings().budget_messages))
    gen = code.generator.ints()
    best = code.n
    for start in range(0, q**code.k, CHUNK):
        idx = np.arange(start, min(start + CHUNK, q**code.k), dtype=np.int64)
        words = evaluate(code.field, _digits(idx, q, code.k), gen)
        best = min(best, int(np.count_nonzero(words != vec[np.newaxis, :], axis=1).min()))
        if best == 0:
            break
    return best
