"""
Repair groups and (r, delta)-locality checks.

A group S is repairable when the code restricted to S has minimum distance
at least delta. With t the rank of S's columns, that is the same as every
|S| - delta + 1 of those columns still having rank t: any delta - 1 erased
symbols of the group are then recoverable from the rest of the group.

A group whose columns are all zero restricts to the zero code and counts as
repairable. Zero columns outside any group (the zero-column padding of the
constructions) are tracked in ``zero_positions``.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from lrckit.config import get_settings, resolve
from lrckit.core.code import LinearCode
from lrckit.errors import InvalidParametersError, check_budget

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalityStructure:
    """Partition of {0, ..., n-1} into repair groups plus zero positions."""

    n: int
    groups: tuple[tuple[int, ...], ...]
    delta: int
    r: int
    zero_positions: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.delta < 2:
            raise InvalidParametersError(f"delta must be >= 2, got {self.delta}")
        if self.r < 1:
            raise InvalidParametersError(f"r must be >= 1, got {self.r}")
        seen: set[int] = set()
        for g in (*self.groups, self.zero_positions):
            for i in g:
                if i in seen:
                    raise InvalidParametersError(f"position {i} appears in more than one group")
                seen.add(i)
        if seen != set(range(self.n)):
            missing = sorted(set(range(self.n)) - seen)
            extra = sorted(seen - set(range(self.n)))
            raise InvalidParametersError(
                f"groups must partition 0..{self.n - 1}: missing {missing}, out of range {extra}"
            )
        upper = self.r + self.delta - 1
        for g in self.groups:
            if not self.delta <= len(g) <= upper:
                raise InvalidParametersError(
                    f"group {list(g)} has size {len(g)}, outside [{self.delta}, {upper}]"
                )

    @classmethod
    def build(
        cls,
        n: int,
        groups: Iterable[Iterable[int]],
        delta: int,
        r: int,
        zero_positions: Iterable[int] = (),
    ) -> LocalityStructure:
        return cls(
            n=n,
            groups=tuple(tuple(sorted(g)) for g in groups),
            delta=delta,
            r=r,
            zero_positions=tuple(sorted(zero_positions)),
        )

    @property
    def sizes(self) -> list[int]:
        return [len(g) for g in self.groups]

    def group_of(self, position: int) -> tuple[int, ...]:
        for g in self.groups:
            if position in g:
                return g
        if position in self.zero_positions:
            return (position,)
        raise InvalidParametersError(f"position {position} is not covered")


@dataclass
class LocalityVerdict:
    """Outcome of has_all_symbol_locality.

    ``witnesses`` maps every checked symbol to a repair set containing it.
    With a hint the sets are the hint's groups; the general search returns
    per-symbol sets that need not be disjoint.
    """

    ok: bool
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    failing_symbol: int | None = None
    structure: LocalityStructure | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_group_repairability(
    code: LinearCode, group: Sequence[int], delta: int, *, budget: int | None = None
) -> bool:
    """Whether the code restricted to ``group`` has minimum distance >= delta."""
    if not group:
        raise InvalidParametersError("repair group must be nonempty")
    cols = code.generator.columns(group)
    t = cols.rank()
    size = len(group) - delta + 1
    if size <= 0 or t == 0:
        return t == 0
    check_budget(
        "column subsets", math.comb(len(group), size), resolve(budget, get_settings().budget_subsets)
    )
    for subset in itertools.combinations(range(len(group)), size):
        if cols.columns(subset).rank() != t:
            return False
    return True


def _check_hint(
    code: LinearCode, r: int, delta: int, hint: LocalityStructure, budget: int | None
) -> LocalityVerdict:
    if hint.n != code.n:
        raise InvalidParametersError(f"structure covers n={hint.n}, code has n={code.n}")
    upper = r + delta - 1
    witnesses: dict[int, tuple[int, ...]] = {}
    zero_cols = set(code.generator.zero_columns())
    for j in hint.zero_positions:
        if j not in zero_cols:
            logger.warning(f"position {j} is listed as zero but its column is not")
            return LocalityVerdict(False, witnesses, failing_symbol=j)
        witnesses[j] = (j,)
    for g in hint.groups:
        if len(g) > upper or not check_group_repairability(code, g, delta, budget=budget):
            logger.warning(f"group {list(g)} fails ({r}, {delta}) repairability")
            return LocalityVerdict(False, witnesses, failing_symbol=g[0])
        for j in g:
            witnesses[j] = g
    return LocalityVerdict(True, witnesses, structure=hint)


def _search(code: LinearCode, r: int, delta: int, budget: int | None) -> LocalityVerdict:
    n = code.n
    upper = min(r + delta - 1, n)
    limit = resolve(budget, get_settings().budget_subsets)
    candidates = sum(math.comb(n - 1, s - 1) for s in range(delta, upper + 1))
    check_budget("candidate repair sets", n * candidates, limit)

    zero_cols = set(code.generator.zero_columns())
    witnesses: dict[int, tuple[int, ...]] = {}
    for j in range(n):
        if j in zero_cols:
            witnesses[j] = (j,)
            continue
        others = [i for i in range(n) if i != j]
        found: tuple[int, ...] | None = None
        # Smallest sets first, so the witness is a minimal-size repair set.
        for size in range(delta, upper + 1):
            for rest in itertools.combinations(others, size - 1):
                s = tuple(sorted((j, *rest)))
                if check_group_repairability(code, s, delta, budget=budget):
                    found = s
                    break
            if found is not None:
                break
        if found is None:
            logger.info(f"symbol {j} has no ({r}, {delta}) repair set")
            return LocalityVerdict(False, witnesses, failing_symbol=j)
        witnesses[j] = found
    return LocalityVerdict(True, witnesses)


def has_all_symbol_locality(
    code: LinearCode,
    r: int,
    delta: int,
    *,
    hint: LocalityStructure | None = None,
    budget: int | None = None,
) -> LocalityVerdict:
    """Whether every symbol has (r, delta)-locality.

    With a ``hint`` only its groups are checked (plus the size bound and that
    its zero positions really are zero columns). Without one, each symbol
    searches sets of size delta..r+delta-1 containing it.
    """
    if r < 1 or delta < 2:
        raise InvalidParametersError(f"need r >= 1 and delta >= 2, got r={r}, delta={delta}")
    if hint is not None:
        return _check_hint(code, r, delta, hint, budget)
    return _search(code, r, delta, budget)
