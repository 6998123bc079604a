"""
Exact arithmetic in GF(p) and GF(p^m).

A FieldSpec is a plain, hashable, picklable description of a field; the
galois array class that does the actual arithmetic is built lazily and cached
per process, so specs can be shipped to worker processes as-is.

Elements use the polynomial basis. Their integer encoding packs the
coefficients base-p, low degree first, which is also galois' own integer
representation, so encoded generator matrices round-trip bit-exactly.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Literal

import galois

from lrckit.errors import FieldError, FieldMismatchError, FieldZeroDivisionError

# Desk-scale cap. Exhaustive searches are the point of this toolkit, and they
# stop being meaningful long before q reaches this.
MAX_ORDER = 2**20

ArithOp = Literal["add", "sub", "mul", "div"]


@lru_cache(maxsize=64)
def _build_gf(characteristic: int, degree: int, modulus: tuple[int, ...] | None) -> Any:
    if modulus is None:
        return galois.GF(characteristic)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(characteristic))
    return galois.GF(characteristic**degree, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with an explicit modulus (low-to-high coefficients, monic).

    Build through field_new(); the constructor trusts its arguments.
    """

    characteristic: int
    degree: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return int(self.characteristic**self.degree)

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    @property
    def gf(self) -> Any:
        """The galois FieldArray subclass for this field."""
        return _build_gf(self.characteristic, self.degree, self.modulus)

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def from_coefficients(self, coefficients: Sequence[int]) -> FieldElement:
        """Element from polynomial-basis coefficients, low degree first."""
        if len(coefficients) != self.degree:
            raise FieldError(
                f"{self}: expected {self.degree} coefficients, got {len(coefficients)}"
            )
        value = 0
        for c in reversed(coefficients):
            if not 0 <= c < self.characteristic:
                raise FieldError(f"{self}: coefficient {c} not reduced mod {self.characteristic}")
            value = value * self.characteristic + c
        return FieldElement(self, value)

    def __str__(self) -> str:
        if self.degree == 1:
            return f"GF({self.characteristic})"
        return f"GF({self.characteristic}^{self.degree})"


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validate parameters and build a FieldSpec.

    Without a modulus, extension fields get the smallest irreducible monic
    polynomial of degree m, so the same (p, m) always yields the same field.
    """
    if p < 2 or not galois.is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"degree must be at least 1, got {m}")
    if p**m > MAX_ORDER:
        raise FieldError(f"field order {p}^{m} exceeds the supported maximum {MAX_ORDER}")

    if m == 1:
        if modulus is not None and len(modulus) > 0:
            raise FieldError(f"GF({p}) is a prime field and takes no modulus")
        return FieldSpec(p, 1, None)

    if modulus is None:
        poly = galois.irreducible_poly(p, m, method="min")
        coeffs = tuple(int(c) for c in reversed(poly.coeffs))
        return FieldSpec(p, m, coeffs)

    coeffs = tuple(int(c) for c in modulus)
    if len(coeffs) != m + 1:
        raise FieldError(f"modulus for degree {m} needs {m + 1} coefficients, got {len(coeffs)}")
    if any(not 0 <= c < p for c in coeffs):
        raise FieldError(f"modulus coefficients must lie in [0, {p}): {list(coeffs)}")
    if coeffs[-1] != 1:
        raise FieldError(f"modulus {list(coeffs)} is not monic")
    poly = galois.Poly(list(reversed(coeffs)), field=galois.GF(p))
    if not poly.is_irreducible():
        raise FieldError(f"modulus {poly} is reducible over GF({p})")
    return FieldSpec(p, m, coeffs)


def field_from_order(q: int) -> FieldSpec:
    """FieldSpec for GF(q) with the default modulus; q must be a prime power."""
    if q < 2 or not galois.is_prime_power(q):
        raise FieldError(f"{q} is not a prime power")
    primes, multiplicities = galois.factors(q)
    return field_new(int(primes[0]), int(multiplicities[0]))


@dataclass(frozen=True)
class FieldElement:
    """A scalar tagged with its field. Mixed-field arithmetic is rejected."""

    field: FieldSpec
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.order:
            raise FieldError(f"{self.value} is not an element of {self.field}")

    @property
    def coefficients(self) -> tuple[int, ...]:
        p = self.field.characteristic
        out = []
        v = self.value
        for _ in range(self.field.degree):
            v, c = divmod(v, p)
            out.append(c)
        return tuple(out)

    def is_zero(self) -> bool:
        return self.value == 0

    def _lift(self) -> Any:
        return self.field.gf(self.value)

    def _coerce(self, other: object) -> FieldElement:
        if not isinstance(other, FieldElement):
            raise FieldMismatchError(f"cannot combine {self.field} element with {other!r}")
        if other.field != self.field:
            raise FieldMismatchError(f"cannot combine {self.field} and {other.field} elements")
        return other

    def __add__(self, other: object) -> FieldElement:
        return arith(self, self._coerce(other), "add")

    def __sub__(self, other: object) -> FieldElement:
        return arith(self, self._coerce(other), "sub")

    def __mul__(self, other: object) -> FieldElement:
        return arith(self, self._coerce(other), "mul")

    def __truediv__(self, other: object) -> FieldElement:
        return arith(self, self._coerce(other), "div")

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, int(-self._lift()))

    def __pow__(self, exponent: int) -> FieldElement:
        return power(self, exponent)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field}({self.value})"


def arith(a: FieldElement, b: FieldElement, op: ArithOp) -> FieldElement:
    b = a._coerce(b)
    x, y = a._lift(), b._lift()
    if op == "add":
        res = x + y
    elif op == "sub":
        res = x - y
    elif op == "mul":
        res = x * y
    elif op == "div":
        if b.is_zero():
            raise FieldZeroDivisionError(f"division by zero in {a.field}")
        res = x / y
    else:
        raise ValueError(f"unknown field operation {op!r}")
    return FieldElement(a.field, int(res))


def inv(a: FieldElement) -> FieldElement:
    if a.is_zero():
        raise FieldZeroDivisionError(f"zero has no inverse in {a.field}")
    return FieldElement(a.field, int(a._lift() ** -1))


def power(a: FieldElement, exponent: int) -> FieldElement:
    """a^e. Exponents of nonzero elements are reduced mod q-1; 0^0 = 1."""
    if a.is_zero():
        if exponent < 0:
            raise FieldZeroDivisionError(f"zero raised to negative power in {a.field}")
        return a.field.one if exponent == 0 else a.field.zero
    e = exponent % (a.field.order - 1)
    return FieldElement(a.field, int(a._lift() ** e))


def enumerate_elements(field: FieldSpec) -> list[FieldElement]:
    """All q elements in integer-encoding order (zero first)."""
    return [FieldElement(field, v) for v in range(field.order)]
