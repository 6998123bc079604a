"""
LRC toolkit - command-line entry point.

Every subcommand is file-based: constructions and transforms write code files
(plus a ``.report.yaml`` next to constructed codes), verification reads them
back. Results go to stdout as plain text, logs go to stderr, and failures
exit with a per-category status code.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import structlog
from pydantic import ValidationError
from structlog.typing import Processor

from lrckit.config import Settings, get_settings, use_settings
from lrckit.core.bounds import d_opt
from lrckit.core.code import minimum_distance
from lrckit.core.codefile import read_code, report_path, write_code, write_report
from lrckit.core.field import FieldSpec, field_from_order, field_new
from lrckit.core.locality import has_all_symbol_locality
from lrckit.errors import BudgetExceededError, InvalidParametersError, LrcError
from lrckit.services.construction import (
    GroupPlan,
    compute_z,
    greedy_lrc,
    partition_lengths,
    plan_bound,
    random_lrc,
)
from lrckit.services.experiment import monte_carlo, write_csv
from lrckit.services.transforms import enlarge, puncture, puncture_locality

logger = logging.getLogger(__name__)

EXIT_VERIFICATION_FAILED = 7


def setup_logging(settings: Settings) -> None:
    """Configure structured logging.

    structlog events and plain stdlib records are rendered through one
    shared ProcessorFormatter, so ``LOG_FORMAT`` selects the output for both.
    The handler writes to stderr; stdout carries command results only.
    """
    log_level = getattr(logging, settings.log_level)

    timestamper = structlog.processors.TimeStamper(fmt="iso")
    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        timestamper,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    structlog.configure(
        processors=[
            *shared_processors,
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    renderer: Processor = (
        structlog.processors.JSONRenderer()
        if settings.log_format == "json"
        else structlog.dev.ConsoleRenderer()
    )
    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=shared_processors,
        processors=[
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            renderer,
        ],
    )

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    root = logging.getLogger()
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(log_level)

    # numba (pulled in by galois) logs its JIT compilation at DEBUG.
    for logger_name in ["numba", "galois"]:
        logging.getLogger(logger_name).setLevel(logging.WARNING)


# ─── argument helpers ───────────────────────────────────────────────────────


def _int_list(raw: str) -> list[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}") from e


def _field(args: argparse.Namespace) -> FieldSpec:
    if args.q is not None:
        return field_from_order(args.q)
    if args.p is not None:
        return field_new(args.p, args.m)
    raise InvalidParametersError("pick a field with --q or --p/--m")


def _plan(args: argparse.Namespace) -> GroupPlan:
    if args.sizes is None:
        return partition_lengths(args.n, args.k, args.r, args.delta)
    zero_columns = args.n - sum(args.sizes)
    if zero_columns < 0:
        raise InvalidParametersError(f"sizes {args.sizes} sum past n={args.n}")
    return GroupPlan(tuple(args.sizes), args.r, args.delta, zero_columns)


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="code length")
    p.add_argument("--k", type=int, required=True, help="dimension")
    p.add_argument("--r", type=int, required=True, help="locality")
    p.add_argument("--delta", type=int, default=2, help="local distance (default 2)")
    p.add_argument("--sizes", type=_int_list, help="repair-group sizes, e.g. 2,4,4")


def _add_field(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--p", type=int, help="field characteristic")
    p.add_argument("--m", type=int, default=1, help="extension degree (with --p)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrckit",
        description="Construct, transform and verify locally repairable codes.",
    )
    parser.add_argument("--budget-messages", type=int, help="distance enumeration budget")
    parser.add_argument("--budget-subsets", type=int, help="subset/selection budget")
    parser.add_argument("--budget-vectors", type=int, help="deep-hole search budget")
    parser.add_argument("--workers", type=int, help="process pool width")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("construct-random", "random-matrix construction"),
        ("construct-greedy", "greedy construction"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_params(p)
        _add_field(p)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-retries", type=int)
        p.add_argument("-o", "--out", type=Path, required=True)
        if name == "construct-greedy":
            p.add_argument("--invariant", choices=["distance", "selection"], default="distance")

    p = sub.add_parser("verify", help="distance, locality and optimality of a code file")
    p.add_argument("code", type=Path)
    p.add_argument("--r", type=int, help="locality (default: from the file)")
    p.add_argument("--delta", type=int, help="local distance (default: from the file)")

    p = sub.add_parser("distance", help="exact minimum distance of a code file")
    p.add_argument("code", type=Path)

    p = sub.add_parser("bound", help="d_opt and the construction bound for a plan")
    _add_params(p)

    p = sub.add_parser("enlarge", help="[n,k,d] r -> [n+1,k+1,d] r+1 (delta = 2)")
    p.add_argument("code", type=Path)
    p.add_argument("--r", type=int, help="locality of the input (default: from the file)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=["auto", "exhaustive", "sampled"], default="sampled")
    p.add_argument("--max-attempts", type=int)
    p.add_argument("-o", "--out", type=Path, required=True)

    p = sub.add_parser("puncture", help="shorten at one coordinate")
    p.add_argument("code", type=Path)
    p.add_argument("--coord", type=int, default=0)
    p.add_argument("-o", "--out", type=Path, required=True)

    p = sub.add_parser("experiment", help="Monte Carlo success rates of the random construction")
    _add_params(p)
    p.add_argument("--fields", type=_int_list, required=True, help="field orders, e.g. 2,5,13")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", type=Path, required=True)

    return parser


# ─── commands ───────────────────────────────────────────────────────────────


def _cmd_construct(args: argparse.Namespace) -> int:
    field = _field(args)
    plan = _plan(args)
    if args.command == "construct-random":
        code, structure, report = random_lrc(
            args.n,
            args.k,
            args.r,
            args.delta,
            field,
            plan=plan,
            seed=args.seed,
            max_retries=args.max_retries,
        )
    else:
        code, structure, report = greedy_lrc(
            args.n,
            args.k,
            args.r,
            args.delta,
            field,
            plan=plan,
            seed=args.seed,
            max_retries=args.max_retries,
            invariant=args.invariant,
        )
    write_code(args.out, code, structure)
    write_report(report_path(args.out), report)
    print(f"wrote {args.out}")
    print(f"n = {report.n}, k = {report.k}, q = {report.q}, groups = {list(report.group_sizes)}")
    print(f"d = {report.achieved_distance} (bound {report.distance_bound}, d_opt {report.d_opt})")
    print(f"attempts = {report.attempts}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    loaded = read_code(args.code)
    code = loaded.code
    r = args.r if args.r is not None else loaded.r
    delta = args.delta if args.delta is not None else loaded.delta
    print(f"n = {code.n}")
    print(f"k = {code.k}")
    print(f"q = {code.field.order}")

    d: int | None
    try:
        d = minimum_distance(code)
        print(f"d = {d}")
    except BudgetExceededError as e:
        d = None
        print(f"d = unknown ({e})")

    if r is None or delta is None:
        print("locality: not checked (no r/delta in file or flags)")
        return 0

    hint = loaded.structure
    if hint is not None and (hint.r != r or hint.delta != delta):
        hint = None
    verdict = has_all_symbol_locality(code, r, delta, hint=hint)
    print(f"locality (r={r}, delta={delta}): {'ok' if verdict else 'FAILED'}")
    if not verdict:
        print(f"  symbol {verdict.failing_symbol} has no repair set")

    bound = d_opt(code.n, code.k, min(r, code.k), delta)
    print(f"d_opt = {bound}")
    if d is not None:
        gap = bound - d
        print(f"gap = {gap}")
        if gap == 0:
            print("optimal")
        elif gap <= delta - 1:
            print("almost optimal")
    return 0 if verdict else EXIT_VERIFICATION_FAILED


def _cmd_distance(args: argparse.Namespace) -> int:
    print(minimum_distance(read_code(args.code).code))
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    plan = _plan(args)
    z = compute_z(plan, args.k)
    print(f"d_opt = {d_opt(args.n, args.k, min(args.r, args.k), args.delta)}")
    print(f"plan = {list(plan.sizes)}")
    if plan.zero_columns:
        print(f"zero_columns = {plan.zero_columns}")
    print(f"z = {z.z}")
    print(f"bound = {plan_bound(plan, args.k)}")
    return 0


def _cmd_enlarge(args: argparse.Namespace) -> int:
    loaded = read_code(args.code)
    r = args.r if args.r is not None else loaded.r
    if r is None:
        raise InvalidParametersError("enlarge needs --r (the file carries no r)")
    hint = loaded.structure if loaded.structure and loaded.structure.r == r else None
    bigger, report = enlarge(
        loaded.code,
        r,
        seed=args.seed,
        hint=hint,
        strategy=args.strategy,
        max_attempts=args.max_attempts,
    )
    write_code(args.out, bigger, delta=2, r=report.r)
    print(f"wrote {args.out}")
    print(f"n = {bigger.n}, k = {bigger.k}, d = {report.distance}, r = {report.r}")
    print(f"deep hole = {report.deep_hole}")
    print(f"d_opt = {report.d_opt}{' (optimal)' if report.is_optimal else ''}")
    return 0


def _cmd_puncture(args: argparse.Namespace) -> int:
    loaded = read_code(args.code)
    smaller = puncture(loaded.code, args.coord)
    if loaded.structure is not None:
        write_code(args.out, smaller, puncture_locality(loaded.structure, args.coord, smaller))
    else:
        write_code(args.out, smaller, delta=loaded.delta, r=loaded.r)
    print(f"wrote {args.out}")
    print(f"n = {smaller.n}, k = {smaller.k}")
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    plan = _plan(args)
    fields = [field_from_order(q) for q in args.fields]
    rows = monte_carlo(
        args.n,
        args.k,
        args.r,
        args.delta,
        plan,
        fields,
        args.trials,
        args.seed,
        budget=get_settings().budget_messages,
    )
    write_csv(args.out, rows)
    for row in rows:
        print(
            f"q = {row.q}: rate {row.rate:.3f} ({row.successes}/{row.trials}), "
            f"mean d {row.mean_distance:.2f}"
        )
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "construct-random": _cmd_construct,
    "construct-greedy": _cmd_construct,
    "verify": _cmd_verify,
    "distance": _cmd_distance,
    "bound": _cmd_bound,
    "enlarge": _cmd_enlarge,
    "puncture": _cmd_puncture,
    "experiment": _cmd_experiment,
}


def _settings_from(args: argparse.Namespace) -> Settings:
    base = get_settings()
    overrides = {
        key: value
        for key, value in (
            ("budget_messages", args.budget_messages),
            ("budget_subsets", args.budget_subsets),
            ("budget_vectors", args.budget_vectors),
            ("workers", args.workers),
            ("log_level", args.log_level),
        )
        if value is not None
    }
    return Settings(**{**base.model_dump(), **overrides}) if overrides else base


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit status."""
    args = build_parser().parse_args(argv)
    try:
        settings = _settings_from(args)
    except ValidationError as e:
        print(f"error[{InvalidParametersError.category}]: {e}", file=sys.stderr)
        return InvalidParametersError.exit_code
    use_settings(settings)
    setup_logging(settings)

    try:
        return _COMMANDS[args.command](args)
    except LrcError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return e.exit_code
    finally:
        use_settings(None)


def cli() -> None:
    """CLI entry point."""
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        sys.exit(130)


if __name__ == "__main__":
    cli()
