"""
Dense matrices over a FieldSpec.

Matrix wraps a galois FieldArray together with the FieldSpec it came from.
Instances are treated as immutable values: every operation returns a new
Matrix and the wrapped array is never handed out without copying.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np
import numpy.typing as npt

from lrckit.config import get_settings, resolve
from lrckit.core.field import FieldElement, FieldSpec
from lrckit.errors import (
    DimensionError,
    FieldMismatchError,
    FieldTooSmallError,
    check_budget,
)


def _rank_of(array: Any) -> int:
    """Rank of a FieldArray by row reduction (pivot count)."""
    if array.size == 0:
        return 0
    reduced = array.row_reduce()
    return int(np.count_nonzero(np.any(reduced.view(np.ndarray) != 0, axis=1)))


class Matrix:
    """A rows x cols matrix over ``field``."""

    __slots__ = ("field", "_array")

    def __init__(self, field: FieldSpec, array: Any) -> None:
        data = np.asarray(array.view(np.ndarray) if hasattr(array, "row_reduce") else array)
        if data.ndim != 2:
            raise DimensionError("Matrix needs a 2-D array")
        self.field = field
        # astype copies, so callers can't mutate us through their own array.
        self._array = field.gf(data.astype(np.int64))

    # ── constructors ────────────────────────────────────────────────────────

    @classmethod
    def from_ints(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> Matrix:
        """From integer-encoded entries. Empty shapes come from Matrix.zeros."""
        if not rows:
            raise DimensionError("from_ints needs at least one row")
        if len({len(row) for row in rows}) != 1:
            raise DimensionError("rows must all have the same length")
        data = np.array(rows, dtype=np.int64)
        if data.ndim != 2:
            raise DimensionError("rows must be flat sequences of integers")
        if data.size and (data.min() < 0 or data.max() >= field.order):
            raise DimensionError(f"entries must be integers in [0, {field.order})")
        return cls(field, data)

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[FieldElement]]) -> Matrix:
        if not rows or not rows[0]:
            raise DimensionError("from_elements needs at least one entry")
        field = rows[0][0].field
        for row in rows:
            for e in row:
                if e.field != field:
                    raise FieldMismatchError("matrix entries come from different fields")
        return cls.from_ints(field, [[e.value for e in row] for row in rows])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> Matrix:
        return cls(field, np.eye(size, dtype=np.int64))

    @classmethod
    def ones(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(field, np.ones((rows, cols), dtype=np.int64))

    @classmethod
    def random(
        cls, field: FieldSpec, rows: int, cols: int, rng: np.random.Generator
    ) -> Matrix:
        """Entries i.i.d. uniform over the whole field (zero included)."""
        return cls(field, field.gf.Random((rows, cols), seed=rng))

    # ── views ───────────────────────────────────────────────────────────────

    @property
    def rows(self) -> int:
        return int(self._array.shape[0])

    @property
    def cols(self) -> int:
        return int(self._array.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def array(self) -> Any:
        """A copy of the underlying FieldArray."""
        return self._array.copy()

    def ints(self) -> npt.NDArray[np.int64]:
        """Integer-encoded entries as a fresh int64 array."""
        return self._array.view(np.ndarray).astype(np.int64)

    def to_ints(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.ints()]

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, int(self._array[i, j]))

    def column(self, j: int) -> Matrix:
        return self.submatrix(range(self.rows), [j])

    def row(self, i: int) -> Matrix:
        return self.submatrix([i], range(self.cols))

    def is_zero(self) -> bool:
        return not np.any(self._array.view(np.ndarray))

    def zero_columns(self) -> list[int]:
        data = self._array.view(np.ndarray)
        return [j for j in range(self.cols) if not np.any(data[:, j])]

    # ── algebra ─────────────────────────────────────────────────────────────

    def _same_field(self, other: Matrix) -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"matrices over {self.field} and {other.field}")

    def rank(self) -> int:
        return _rank_of(self._array)

    def rref(self) -> tuple[Matrix, list[int]]:
        """Reduced row-echelon form and its pivot columns."""
        if self._array.size == 0:
            return Matrix(self.field, self._array.copy()), []
        reduced = self._array.row_reduce()
        data = reduced.view(np.ndarray)
        pivots = [int(np.argmax(row != 0)) for row in data if np.any(row)]
        return Matrix(self.field, reduced), pivots

    def __matmul__(self, other: Matrix) -> Matrix:
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.field, self._array @ other._array)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
        r = list(rows)
        c = list(cols)
        for name, idx, bound in (("row", r, self.rows), ("column", c, self.cols)):
            if len(set(idx)) != len(idx):
                raise DimensionError(f"duplicate {name} indices {idx}")
            bad = [i for i in idx if not 0 <= i < bound]
            if bad:
                raise DimensionError(f"{name} indices {bad} out of range [0, {bound})")
        return Matrix(self.field, self._array[np.ix_(r, c)])

    def columns(self, cols: Iterable[int]) -> Matrix:
        return self.submatrix(range(self.rows), cols)

    def delete_column(self, j: int) -> Matrix:
        if not 0 <= j < self.cols:
            raise DimensionError(f"column {j} out of range [0, {self.cols})")
        return self.columns(i for i in range(self.cols) if i != j)

    def delete_row(self, i: int) -> Matrix:
        if not 0 <= i < self.rows:
            raise DimensionError(f"row {i} out of range [0, {self.rows})")
        return self.submatrix((r for r in range(self.rows) if r != i), range(self.cols))

    def transpose(self) -> Matrix:
        return Matrix(self.field, self._array.T.copy())

    def hstack(self, *others: Matrix) -> Matrix:
        for o in others:
            self._same_field(o)
            if o.rows != self.rows:
                raise DimensionError(f"hstack row mismatch: {self.rows} vs {o.rows}")
        arrays = [self.ints(), *(o.ints() for o in others)]
        return Matrix(self.field, np.hstack(arrays))

    def vstack(self, *others: Matrix) -> Matrix:
        for o in others:
            self._same_field(o)
            if o.cols != self.cols:
                raise DimensionError(f"vstack column mismatch: {self.cols} vs {o.cols}")
        arrays = [self.ints(), *(o.ints() for o in others)]
        return Matrix(self.field, np.vstack(arrays))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.ints(), other.ints()))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_ints()})"


# ── module-level operations ─────────────────────────────────────────────────


def rank(m: Matrix) -> int:
    return m.rank()


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    return m.rref()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def submatrix(m: Matrix, rows: Iterable[int], cols: Iterable[int]) -> Matrix:
    return m.submatrix(rows, cols)


def square_submatrix_count(rows: int, cols: int) -> int:
    return sum(math.comb(rows, s) * math.comb(cols, s) for s in range(1, min(rows, cols) + 1))


def all_square_submatrices_invertible(m: Matrix, *, work_limit: int | None = None) -> bool:
    """True iff every square submatrix of every size has full rank.

    Exhaustive; raises BudgetExceededError when the number of square
    submatrices exceeds ``work_limit``.
    """
    limit = resolve(work_limit, get_settings().submatrix_work_limit)
    check_budget("square submatrices", square_submatrix_count(m.rows, m.cols), limit)

    data = m.array
    # 1x1 minors are the entries themselves.
    if np.any(data.view(np.ndarray) == 0):
        return False
    for size in range(2, min(m.rows, m.cols) + 1):
        for rs in itertools.combinations(range(m.rows), size):
            for cs in itertools.combinations(range(m.cols), size):
                if _rank_of(data[np.ix_(rs, cs)]) < size:
                    return False
    return True


def cauchy_matrix(field: FieldSpec, t: int, c: int) -> Matrix:
    """t x c matrix with entries 1/(x_i + y_j).

    x takes the first t elements in enumeration order; y scans onward from
    element t (wrapping around) and keeps the first c elements with
    x_i + y != 0 for every i.
    """
    if t < 1 or c < 1:
        raise DimensionError(f"cauchy_matrix needs t, c >= 1, got {t}x{c}")
    q = field.order
    if q < t + c:
        raise FieldTooSmallError(f"{field} is too small for a {t}x{c} Cauchy matrix")

    gf = field.gf
    xs = gf(np.arange(t, dtype=np.int64))
    forbidden = {int(v) for v in -xs}
    ys: list[int] = []
    for offset in range(q):
        y = (t + offset) % q
        if y not in forbidden:
            ys.append(y)
            if len(ys) == c:
                break

    y_arr = gf(np.array(ys, dtype=np.int64))
    denom = xs[:, np.newaxis] + y_arr[np.newaxis, :]
    return Matrix(field, gf.Ones(denom.shape) / denom)


def repair_block(field: FieldSpec, t: int, c: int) -> Matrix:
    """The t x c block B of a repair group's (I_t | B) layout.

    A Cauchy matrix when the field is large enough. A single repair column
    only needs nonzero entries, so c = 1 falls back to all ones in small
    fields such as GF(2).
    """
    if field.order >= t + c:
        return cauchy_matrix(field, t, c)
    if c == 1:
        return Matrix.ones(field, t, 1)
    raise FieldTooSmallError(
        f"{field} has no {t}x{c} block with all square submatrices invertible "
        f"(Cauchy construction needs q >= {t + c})"
    )
