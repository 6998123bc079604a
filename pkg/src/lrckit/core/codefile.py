"""Read and write code files.

A code file is one YAML document:

    field: {p: 2, m: 2, modulus: [1, 1, 1]}
    n: 4
    k: 2
    generator:
      - [1, 1, 0, 0]
      - [0, 0, 1, 1]
    groups: [[0, 1], [2, 3]]      # optional
    zero_positions: []            # optional
    delta: 2                      # optional
    r: 1                          # optional

Generator entries are integer-encoded field elements (polynomial
coefficients packed base p, low degree first). The modulus lists the
coefficients low-to-high and is omitted for prime fields. Unknown keys are
errors, not ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

from lrckit.core.code import LinearCode
from lrckit.core.field import FieldSpec, field_new
from lrckit.core.locality import LocalityStructure
from lrckit.core.matrix import Matrix
from lrckit.core.report import ConstructionReport
from lrckit.errors import CodeFileError, LrcError

_TOP_LEVEL_KEYS = frozenset(
    {"field", "n", "k", "generator", "groups", "zero_positions", "delta", "r"}
)
_FIELD_KEYS = frozenset({"p", "m", "modulus"})


def _reject_unknown_keys(context: str, cfg: dict[Any, Any], allowed: frozenset[str]) -> None:
    unknown = sorted(str(k) for k in cfg.keys() if k not in allowed)
    if unknown:
        raise CodeFileError(f"{context}: unknown key(s) {unknown}. Allowed: {sorted(allowed)}")


@dataclass
class CodeFile:
    """A code plus whatever locality metadata travelled with it."""

    code: LinearCode
    structure: LocalityStructure | None = None
    delta: int | None = None
    r: int | None = None


# ─── serialization ──────────────────────────────────────────────────────────


def field_to_json(field: FieldSpec) -> dict[str, Any]:
    data: dict[str, Any] = {"p": field.characteristic, "m": field.degree}
    if field.modulus is not None:
        data["modulus"] = list(field.modulus)
    return data


def dump_code(
    code: LinearCode,
    structure: LocalityStructure | None = None,
    *,
    delta: int | None = None,
    r: int | None = None,
) -> str:
    data: dict[str, Any] = {
        "field": field_to_json(code.field),
        "n": code.n,
        "k": code.k,
        "generator": code.generator.to_ints(),
    }
    if structure is not None:
        data["groups"] = [list(g) for g in structure.groups]
        data["zero_positions"] = list(structure.zero_positions)
        delta, r = structure.delta, structure.r
    if delta is not None:
        data["delta"] = delta
    if r is not None:
        data["r"] = r
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None)


def write_code(
    path: Path,
    code: LinearCode,
    structure: LocalityStructure | None = None,
    *,
    delta: int | None = None,
    r: int | None = None,
) -> None:
    path.write_text(dump_code(code, structure, delta=delta, r=r), encoding="utf-8")


def report_path(code_path: Path) -> Path:
    return code_path.with_name(code_path.name + ".report.yaml")


def write_report(path: Path, report: ConstructionReport) -> None:
    path.write_text(yaml.safe_dump(report.to_json(), sort_keys=False), encoding="utf-8")


def read_report(path: Path) -> ConstructionReport:
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
        return ConstructionReport.from_json(raw)
    except OSError as e:
        raise CodeFileError(f"couldn't read {path}: {e}") from e
    except (yaml.YAMLError, KeyError, TypeError, ValueError) as e:
        raise CodeFileError(f"malformed report {path}: {e}") from e


# ─── parsing ────────────────────────────────────────────────────────────────


def _int(context: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CodeFileError(f"{context} must be an integer, got {value!r}")
    return value


def _int_list(context: str, value: Any) -> list[int]:
    if not isinstance(value, list):
        raise CodeFileError(f"{context} must be a list of integers")
    return [_int(f"{context}[{i}]", v) for i, v in enumerate(value)]


def _parse_field(raw: Any) -> FieldSpec:
    if not isinstance(raw, dict):
        raise CodeFileError("`field` must be a mapping with p, m and optional modulus")
    _reject_unknown_keys("field", raw, _FIELD_KEYS)
    if "p" not in raw:
        raise CodeFileError("field: missing `p`")
    p = _int("field.p", raw["p"])
    m = _int("field.m", raw.get("m", 1))
    modulus = raw.get("modulus")
    coeffs = None if modulus is None else _int_list("field.modulus", modulus)
    try:
        return field_new(p, m, coeffs)
    except LrcError as e:
        raise CodeFileError(f"field: {e}") from e


def parse_code(text: str, source: str = "<string>") -> CodeFile:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise CodeFileError(f"malformed YAML in {source}: {e}") from e
    if not isinstance(raw, dict):
        raise CodeFileError(f"{source}: top-level must be a mapping")
    _reject_unknown_keys(source, raw, _TOP_LEVEL_KEYS)
    for key in ("field", "n", "k", "generator"):
        if key not in raw:
            raise CodeFileError(f"{source}: missing `{key}`")

    field = _parse_field(raw["field"])
    n = _int("n", raw["n"])
    k = _int("k", raw["k"])
    rows = raw["generator"]
    if not isinstance(rows, list) or len(rows) != k:
        raise CodeFileError(f"{source}: generator must be a list of k={k} rows")
    ints = [_int_list(f"generator[{i}]", row) for i, row in enumerate(rows)]
    for i, row in enumerate(ints):
        if len(row) != n:
            raise CodeFileError(f"{source}: generator row {i} has {len(row)} entries, n={n}")
        bad = [v for v in row if not 0 <= v < field.order]
        if bad:
            raise CodeFileError(f"{source}: generator row {i} has non-elements {bad} of {field}")

    try:
        code = LinearCode(Matrix.from_ints(field, ints))
    except LrcError as e:
        raise CodeFileError(f"{source}: {e}") from e

    delta = None if raw.get("delta") is None else _int("delta", raw["delta"])
    r = None if raw.get("r") is None else _int("r", raw["r"])
    structure = None
    if raw.get("groups") is not None:
        if delta is None or r is None:
            raise CodeFileError(f"{source}: `groups` needs `delta` and `r` alongside")
        groups = raw["groups"]
        if not isinstance(groups, list):
            raise CodeFileError(f"{source}: `groups` must be a list of index lists")
        zeros = _int_list("zero_positions", raw.get("zero_positions") or [])
        try:
            structure = LocalityStructure.build(
                n,
                [_int_list(f"groups[{i}]", g) for i, g in enumerate(groups)],
                delta,
                r,
                zeros,
            )
        except LrcError as e:
            raise CodeFileError(f"{source}: {e}") from e
    return CodeFile(code=code, structure=structure, delta=delta, r=r)


def read_code(path: Path) -> CodeFile:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CodeFileError(f"couldn't read {path}: {e}") from e
    return parse_code(text, str(path))
