"""
Random-matrix and greedy constructions of codes with all-symbol
(r, delta)-locality.

Both builders lay the generator out group by group. Group j owns s_j
consecutive columns: t_j = s_j - delta + 1 free columns X_j followed by the
delta - 1 repair columns X_j·B_j, where every square submatrix of B_j is
invertible. Any t_j columns of X_j·(I | B_j) then span the same space as X_j,
which is exactly delta-repairability of the group. Padding zero columns, if
any, come last.

With sizes sorted ascending, z is the largest count of leading groups whose
t_j sum to at most k - 1, and every accepted code satisfies

    d >= (sum of s_j) - k - z(delta - 1) + 1.

Acceptance is always by direct verification (rank k, every group
repairable, minimum distance at least the bound); a failed attempt is
resampled up to ``max_retries`` times.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from lrckit.config import get_settings, resolve
from lrckit.core.bounds import d_opt
from lrckit.core.code import (
    IntArray,
    LinearCode,
    enumerate_messages,
    evaluate,
    minimum_weight,
)
from lrckit.core.field import FieldSpec
from lrckit.core.locality import LocalityStructure, check_group_repairability
from lrckit.core.matrix import Matrix, repair_block
from lrckit.core.report import ConstructionReport
from lrckit.errors import InvalidParametersError, RetriesExhaustedError, check_budget

logger = logging.getLogger(__name__)

Invariant = Literal["distance", "selection"]


# ─── plans ──────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class GroupPlan:
    """Repair-group sizes (kept sorted ascending) plus trailing zero columns."""

    sizes: tuple[int, ...]
    r: int
    delta: int
    zero_columns: int = 0

    def __post_init__(self) -> None:
        if self.r < 1 or self.delta < 2:
            raise InvalidParametersError(
                f"need r >= 1 and delta >= 2, got r={self.r}, delta={self.delta}"
            )
        if not self.sizes:
            raise InvalidParametersError("a plan needs at least one group")
        upper = self.r + self.delta - 1
        bad = [s for s in self.sizes if not self.delta <= s <= upper]
        if bad:
            raise InvalidParametersError(
                f"group sizes {bad} outside [{self.delta}, {upper}] for r={self.r}, "
                f"delta={self.delta}"
            )
        if self.zero_columns < 0:
            raise InvalidParametersError("zero_columns must be >= 0")
        object.__setattr__(self, "sizes", tuple(sorted(self.sizes)))

    @property
    def n(self) -> int:
        return self.coded_length + self.zero_columns

    @property
    def coded_length(self) -> int:
        return sum(self.sizes)

    @property
    def num_groups(self) -> int:
        return len(self.sizes)

    @property
    def free_ranks(self) -> tuple[int, ...]:
        """t_j = s_j - delta + 1."""
        return tuple(s - self.delta + 1 for s in self.sizes)

    def check_feasible(self, k: int) -> None:
        if k < 1:
            raise InvalidParametersError(f"k must be >= 1, got {k}")
        if sum(self.free_ranks) < k:
            raise InvalidParametersError(
                f"plan {list(self.sizes)} supports rank at most {sum(self.free_ranks)} < k={k}"
            )

    def layout(self) -> list[tuple[int, ...]]:
        """Column positions of each group, in plan order."""
        out = []
        start = 0
        for s in self.sizes:
            out.append(tuple(range(start, start + s)))
            start += s
        return out

    def structure(self) -> LocalityStructure:
        zeros = range(self.coded_length, self.n)
        return LocalityStructure.build(self.n, self.layout(), self.delta, self.r, zeros)


def partition_lengths(
    n: int, k: int, r: int, delta: int, *, allow_zero_columns: bool = True
) -> GroupPlan:
    """Full groups of size r + delta - 1, plus one group of the remainder b.

    A remainder 0 < b < delta can't form a group; it becomes b zero columns
    instead.
    """
    if r < 1 or delta < 2:
        raise InvalidParametersError(f"need r >= 1 and delta >= 2, got r={r}, delta={delta}")
    if not 1 <= k < n:
        raise InvalidParametersError(f"need 1 <= k < n, got n={n}, k={k}")
    full = r + delta - 1
    a, b = divmod(n, full)
    if n - math.ceil(n / full) * (delta - 1) < k:
        raise InvalidParametersError(
            f"(n={n}, k={k}, r={r}, delta={delta}) is infeasible: "
            f"n - ceil(n/(r+delta-1))(delta-1) < k"
        )
    sizes = [full] * a
    zero_columns = 0
    if b >= delta:
        sizes.append(b)
    elif b > 0:
        if not allow_zero_columns:
            raise InvalidParametersError(
                f"n={n} leaves a remainder of {b} < delta={delta}; "
                "enable zero columns or pick another n"
            )
        zero_columns = b
    if not sizes:
        raise InvalidParametersError(f"n={n} is too short for a group of size >= {delta}")
    plan = GroupPlan(tuple(sizes), r, delta, zero_columns)
    plan.check_feasible(k)
    return plan


@dataclass(frozen=True)
class ZStatistic:
    z: int
    prefix_sums: tuple[int, ...]


def compute_z(plan: GroupPlan, k: int) -> ZStatistic:
    """Largest z with t_1 + ... + t_z <= k - 1 over ascending sizes."""
    plan.check_feasible(k)
    prefix = tuple(itertools.accumulate(plan.free_ranks))
    z = sum(1 for p in prefix if p <= k - 1)
    return ZStatistic(z=z, prefix_sums=prefix)


def distance_bound(n: int, k: int, delta: int, z: int) -> int:
    return n - k - z * (delta - 1) + 1


def plan_bound(plan: GroupPlan, k: int) -> int:
    """Guaranteed distance of an accepted code; zero columns don't count."""
    return distance_bound(plan.coded_length, k, plan.delta, compute_z(plan, k).z)


def z_closed_form(n: int, k: int, r: int, delta: int) -> int:
    """z for partition_lengths(n, k, r, delta) without building the plan:
    floor((k-1)/r) for full groups only, ceil((k-b+delta-1)/r) with a
    remainder group of size b >= delta."""
    b = n % (r + delta - 1)
    if b < delta:
        return (k - 1) // r
    return max(0, -(-(k - b + delta - 1) // r))


# ─── shared attempt machinery ───────────────────────────────────────────────


def repair_blocks(field: FieldSpec, plan: GroupPlan) -> dict[int, Matrix]:
    """One block per distinct t_j; groups with equal t share it."""
    return {t: repair_block(field, t, plan.delta - 1) for t in set(plan.free_ranks)}


def draw_random_generator(
    field: FieldSpec,
    k: int,
    plan: GroupPlan,
    blocks: dict[int, Matrix],
    rng: np.random.Generator,
) -> Matrix:
    """(E_1 | E_1 B_1 | E_2 | E_2 B_2 | ... | 0) with E_j uniform k x t_j."""
    parts: list[Matrix] = []
    for t in plan.free_ranks:
        e = Matrix.random(field, k, t, rng)
        parts.extend((e, e @ blocks[t]))
    if plan.zero_columns:
        parts.append(Matrix.zeros(field, k, plan.zero_columns))
    return parts[0].hstack(*parts[1:])


@dataclass
class Assessment:
    rank_ok: bool
    groups_ok: bool
    weight: int
    bound: int

    @property
    def accepted(self) -> bool:
        return self.rank_ok and self.groups_ok and self.weight >= self.bound


def assess_generator(
    generator: Matrix,
    plan: GroupPlan,
    bound: int,
    *,
    exact: bool = False,
    budget: int | None = None,
    workers: int | None = None,
) -> Assessment:
    """Rank, group repairability and minimum weight of a candidate.

    Unless ``exact`` is set, the weight enumeration stops as soon as a word
    lighter than ``bound`` shows up, and the other checks are skipped once
    one has failed.
    """
    k = generator.rows
    rank_ok = generator.rank() == k
    groups_ok = False
    if rank_ok:
        code = LinearCode(generator)
        groups_ok = all(
            check_group_repairability(code, g, plan.delta) for g in plan.layout()
        )
    if not exact and not (rank_ok and groups_ok):
        return Assessment(rank_ok, groups_ok, 0, bound)
    weight = minimum_weight(
        generator, budget=budget, workers=workers, stop_below=None if exact else bound
    )
    return Assessment(rank_ok, groups_ok, weight, bound)


def _resolve_plan(
    n: int, k: int, r: int, delta: int, plan: GroupPlan | None
) -> GroupPlan:
    if plan is None:
        return partition_lengths(n, k, r, delta)
    if plan.n != n:
        raise InvalidParametersError(f"plan covers n={plan.n}, asked for n={n}")
    if plan.r != r or plan.delta != delta:
        raise InvalidParametersError(
            f"plan built for (r={plan.r}, delta={plan.delta}), asked for (r={r}, delta={delta})"
        )
    plan.check_feasible(k)
    return plan


def _report(
    method: str,
    code: LinearCode,
    plan: GroupPlan,
    r: int,
    distance: int,
    attempts: int,
    seed: int | None,
    invariant: str | None = None,
    extra: dict[str, int] | None = None,
) -> ConstructionReport:
    n, k = code.n, code.k
    bound_opt = d_opt(n, k, min(r, k), plan.delta)
    return ConstructionReport(
        method=method,
        n=n,
        k=k,
        r=r,
        delta=plan.delta,
        q=code.field.order,
        group_sizes=plan.sizes,
        z=compute_z(plan, k).z,
        distance_bound=plan_bound(plan, k),
        d_opt=bound_opt,
        achieved_distance=distance,
        is_optimal=distance == bound_opt,
        attempts=attempts,
        seed=seed,
        zero_columns=plan.zero_columns,
        invariant=invariant,
        extra=extra or {},
    )


# ─── random construction ────────────────────────────────────────────────────


def random_lrc(
    n: int,
    k: int,
    r: int,
    delta: int,
    field: FieldSpec,
    *,
    plan: GroupPlan | None = None,
    seed: int | None = None,
    max_retries: int | None = None,
    budget: int | None = None,
    workers: int | None = None,
) -> tuple[LinearCode, LocalityStructure, ConstructionReport]:
    """Uniform E, Cauchy B_j, verify-and-retry."""
    if r >= k:
        raise InvalidParametersError(f"the random construction needs r < k, got r={r}, k={k}")
    plan = _resolve_plan(n, k, r, delta, plan)
    retries = resolve(max_retries, get_settings().max_retries)
    blocks = repair_blocks(field, plan)
    bound = plan_bound(plan, k)
    rng = np.random.default_rng(seed)

    for attempt in range(1, retries + 1):
        generator = draw_random_generator(field, k, plan, blocks, rng)
        verdict = assess_generator(generator, plan, bound, budget=budget, workers=workers)
        if not verdict.accepted:
            logger.debug(
                f"random attempt {attempt}: rank_ok={verdict.rank_ok} "
                f"groups_ok={verdict.groups_ok} weight={verdict.weight} (need {bound})"
            )
            continue
        code = LinearCode(generator)
        report = _report("random", code, plan, r, verdict.weight, attempt, seed)
        logger.info(
            f"random [{n}, {k}] over {field}: d={verdict.weight} (bound {bound}, "
            f"d_opt {report.d_opt}) after {attempt} attempt(s)"
        )
        return code, plan.structure(), report

    raise RetriesExhaustedError(
        f"no acceptable random [{n}, {k}] code over {field} in {retries} attempt(s)"
    )


# ─── independent selections ─────────────────────────────────────────────────


@dataclass
class SelectionVerdict:
    ok: bool
    witness: list[tuple[int, int]] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _count_vectors(limits: Sequence[int], total: int) -> list[tuple[int, ...]]:
    return [
        c
        for c in itertools.product(*(range(lim + 1) for lim in limits))
        if sum(c) == total
    ]


def selection_count(sizes: Sequence[int], caps: Sequence[int], k: int) -> int:
    limits = [min(c, s) for c, s in zip(caps, sizes, strict=True)]
    total = min(k, sum(limits))
    return sum(
        math.prod(math.comb(s, c) for s, c in zip(sizes, counts, strict=True))
        for counts in _count_vectors(limits, total)
    )


def independent_selection_property(
    groups: Sequence[Matrix],
    k: int,
    caps: Sequence[int],
    *,
    budget: int | None = None,
) -> SelectionVerdict:
    """Whether every choice of min(k, sum of caps) columns, at most caps[j]
    from group j, is linearly independent.

    Subsets of independent sets are independent, so only maximal selections
    are enumerated. The witness lists (group, column) pairs of a dependent
    selection.
    """
    if len(groups) != len(caps):
        raise InvalidParametersError("need one cap per group")
    sizes = [g.cols for g in groups]
    limits = [min(c, s) for c, s in zip(caps, sizes, strict=True)]
    total = min(k, sum(limits))
    check_budget(
        "vector selections",
        selection_count(sizes, caps, k),
        resolve(budget, get_settings().budget_subsets),
    )
    if total == 0:
        return SelectionVerdict(True)

    for counts in _count_vectors(limits, total):
        per_group = [
            list(itertools.combinations(range(s), c)) for s, c in zip(sizes, counts, strict=True)
        ]
        for choice in itertools.product(*per_group):
            picked = [g.columns(cols) for g, cols in zip(groups, choice, strict=True) if cols]
            stacked = picked[0].hstack(*picked[1:])
            if stacked.rank() < total:
                witness = [(j, c) for j, cols in enumerate(choice) for c in cols]
                return SelectionVerdict(False, witness)
    return SelectionVerdict(True)


# ─── greedy construction ────────────────────────────────────────────────────


@dataclass
class _GreedyState:
    """Columns committed so far plus the per-message zero counts the
    distance invariant needs."""

    field: FieldSpec
    k: int
    committed: list[Matrix] = field(default_factory=list)
    caps: list[int] = field(default_factory=list)
    messages: IntArray | None = None
    zeros: IntArray | None = None

    def zeros_on(self, columns: Matrix) -> IntArray:
        assert self.messages is not None
        values = evaluate(self.field, self.messages, columns.ints())
        return np.count_nonzero(values == 0, axis=1)


def _candidate_ok(
    state: _GreedyState,
    invariant: Invariant,
    gens: Matrix,
    block: Matrix,
    group_zeros: IntArray | None,
    allowed_zeros: int,
    budget: int | None,
) -> tuple[bool, IntArray | None]:
    """Check the invariant for the current group after its h-th generator.

    Returns the zero counts of ``gens`` for reuse on the next step.
    """
    h = gens.cols
    if gens.rank() < h:
        return False, None
    if invariant == "selection":
        partial = gens @ block.submatrix(range(h), range(block.cols))
        family = [*state.committed, gens.hstack(partial)]
        caps = [*state.caps, h]
        return bool(independent_selection_property(family, state.k, caps, budget=budget)), None

    # Only final columns of the code are counted. The repair columns join
    # once the group's last generator fixes them.
    assert state.zeros is not None
    newest = state.zeros_on(gens.column(h - 1))
    gens_zeros = newest if group_zeros is None else group_zeros + newest
    total = state.zeros + gens_zeros
    if h == block.rows:
        total = total + state.zeros_on(gens @ block)
    return bool(total.max() <= allowed_zeros), gens_zeros


def greedy_lrc(
    n: int,
    k: int,
    r: int,
    delta: int,
    field: FieldSpec,
    *,
    plan: GroupPlan | None = None,
    seed: int | None = None,
    max_retries: int | None = None,
    invariant: Invariant = "distance",
    max_candidate_draws: int | None = None,
    budget: int | None = None,
    workers: int | None = None,
) -> tuple[LinearCode, LocalityStructure, ConstructionReport]:
    """Build the groups one generator at a time.

    Group j's generators g_1..g_t are drawn one by one; after h of them a
    candidate is kept only if the chosen invariant still holds:

    ``selection``: with the partial repair columns s^(h) = (g_1..g_h)·B[:h]
    added to the current group, every choice of at most k columns, at most
    t_i from each completed group and at most h from the current one, is
    independent.

    ``distance``: no nonzero message vanishes on more than
    (sum of s_j) - bound of the final columns fixed so far: the completed
    groups, the current group's generators, and its repair columns once
    h = t. Zeros on a subset of columns never exceed zeros on all of them,
    so every code with d >= bound passes at every step, and a completed
    attempt already meets the bound. The partial repair columns s^(h) are
    not final columns and stay out of the count.

    The finished code is verified exactly like the random construction.
    """
    if invariant not in ("distance", "selection"):
        raise InvalidParametersError(f"unknown greedy invariant {invariant!r}")
    plan = _resolve_plan(n, k, r, delta, plan)
    settings = get_settings()
    retries = resolve(max_retries, settings.max_retries)
    draws = resolve(max_candidate_draws, settings.max_candidate_draws)
    blocks = repair_blocks(field, plan)
    bound = plan_bound(plan, k)
    allowed_zeros = plan.coded_length - bound
    rng = np.random.default_rng(seed)

    messages = None
    if invariant == "distance":
        messages = enumerate_messages(field, k, budget=budget)

    total_draws = 0
    for attempt in range(1, retries + 1):
        state = _GreedyState(field=field, k=k, messages=messages)
        if messages is not None:
            state.zeros = np.zeros(len(messages), dtype=np.int64)
        failed = False
        for t in plan.free_ranks:
            block = blocks[t]
            gens: Matrix | None = None
            group_zeros: IntArray | None = None
            for h in range(1, t + 1):
                accepted = False
                for _ in range(draws):
                    total_draws += 1
                    v = Matrix.random(field, k, 1, rng)
                    candidate = v if gens is None else gens.hstack(v)
                    ok, zeros = _candidate_ok(
                        state, invariant, candidate, block, group_zeros, allowed_zeros, budget
                    )
                    if ok:
                        gens, group_zeros, accepted = candidate, zeros, True
                        break
                if not accepted:
                    logger.debug(
                        f"greedy attempt {attempt}: no candidate for step {h}/{t} "
                        f"after {draws} draws"
                    )
                    failed = True
                    break
            if failed:
                break
            assert gens is not None
            group = gens.hstack(gens @ block)
            if state.zeros is not None:
                state.zeros = state.zeros + state.zeros_on(group)
            state.committed.append(group)
            state.caps.append(t)
        if failed:
            continue

        parts = state.committed
        if plan.zero_columns:
            parts = [*parts, Matrix.zeros(field, k, plan.zero_columns)]
        generator = parts[0].hstack(*parts[1:])
        verdict = assess_generator(generator, plan, bound, budget=budget, workers=workers)
        if not verdict.accepted:
            logger.debug(
                f"greedy attempt {attempt} failed verification: rank_ok={verdict.rank_ok} "
                f"groups_ok={verdict.groups_ok} weight={verdict.weight} (need {bound})"
            )
            continue
        code = LinearCode(generator)
        report = _report(
            "greedy",
            code,
            plan,
            r,
            verdict.weight,
            attempt,
            seed,
            invariant=invariant,
            extra={"candidate_draws": total_draws},
        )
        logger.info(
            f"greedy ({invariant}) [{n}, {k}] over {field}: d={verdict.weight} "
            f"(bound {bound}, d_opt {report.d_opt}) after {attempt} attempt(s)"
        )
        return code, plan.structure(), report

    raise RetriesExhaustedError(
        f"no acceptable greedy [{n}, {k}] code over {field} in {retries} attempt(s)"
    )
