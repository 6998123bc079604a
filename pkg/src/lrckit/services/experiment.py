"""Monte Carlo success rates of the random construction across field sizes.

Each trial is one single-attempt draw. Per-trial seeds are spawned from one
SeedSequence and reused for every field, so rates at different q compare
matched draws. Trials are independent and can run on a process pool; the
result does not depend on the worker count.
"""

from __future__ import annotations

import csv
import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from lrckit.config import get_settings, resolve
from lrckit.core.bounds import d_opt
from lrckit.core.field import FieldSpec
from lrckit.errors import InvalidParametersError
from lrckit.services.construction import (
    GroupPlan,
    assess_generator,
    draw_random_generator,
    plan_bound,
    repair_blocks,
)

logger = logging.getLogger(__name__)

CSV_HEADER = ("q", "trials", "successes", "rate", "mean_distance", "bound", "d_opt")


@dataclass(frozen=True)
class MonteCarloRow:
    q: int
    trials: int
    successes: int
    rate: float
    mean_distance: float
    bound: int
    d_opt: int

    @property
    def standard_error(self) -> float:
        return float(np.sqrt(self.rate * (1 - self.rate) / self.trials)) if self.trials else 0.0


def _trial(
    field: FieldSpec, k: int, plan: GroupPlan, seed: np.random.SeedSequence, budget: int | None
) -> tuple[bool, int]:
    rng = np.random.default_rng(seed)
    generator = draw_random_generator(field, k, plan, repair_blocks(field, plan), rng)
    verdict = assess_generator(generator, plan, plan_bound(plan, k), exact=True, budget=budget)
    return verdict.accepted, verdict.weight


def monte_carlo(
    n: int,
    k: int,
    r: int,
    delta: int,
    plan: GroupPlan,
    fields: Sequence[FieldSpec],
    trials: int,
    seed: int | None,
    *,
    workers: int | None = None,
    budget: int | None = None,
) -> list[MonteCarloRow]:
    """One row per field: how many single draws were accepted, and the mean
    exact minimum distance over all draws (rank-deficient draws count as 0)."""
    if trials < 1:
        raise InvalidParametersError("trials must be at least 1")
    if plan.n != n:
        raise InvalidParametersError(f"plan covers n={plan.n}, asked for n={n}")
    plan.check_feasible(k)
    n_workers = resolve(workers, get_settings().workers)
    seeds = np.random.SeedSequence(seed).spawn(trials)
    bound = plan_bound(plan, k)
    optimum = d_opt(n, k, min(r, k), delta)

    rows = []
    for f in fields:
        if n_workers <= 1:
            results = [_trial(f, k, plan, s, budget) for s in seeds]
        else:
            with ProcessPoolExecutor(max_workers=n_workers) as pool:
                results = list(
                    pool.map(
                        _trial,
                        [f] * trials,
                        [k] * trials,
                        [plan] * trials,
                        seeds,
                        [budget] * trials,
                    )
                )
        successes = sum(1 for ok, _ in results if ok)
        row = MonteCarloRow(
            q=f.order,
            trials=trials,
            successes=successes,
            rate=successes / trials,
            mean_distance=float(np.mean([w for _, w in results])),
            bound=bound,
            d_opt=optimum,
        )
        logger.info(f"monte carlo q={row.q}: {successes}/{trials} accepted")
        rows.append(row)
    return rows


def write_csv(path: Path, rows: Sequence[MonteCarloRow]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(CSV_HEADER))
        writer.writeheader()
        for row in rows:
            data = asdict(row)
            data["rate"] = f"{row.rate:.6f}"
            data["mean_distance"] = f"{row.mean_distance:.6f}"
            writer.writerow(data)
