"""Construction report: parameters, achieved distance and retry metadata.

Written next to every constructed code file as ``<code>.report.yaml``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from lrckit.errors import VerificationError


@dataclass(frozen=True)
class ConstructionReport:
    method: str
    n: int
    k: int
    r: int
    delta: int
    q: int
    group_sizes: tuple[int, ...]
    z: int
    distance_bound: int
    d_opt: int
    achieved_distance: int
    is_optimal: bool
    attempts: int
    seed: int | None
    success: bool = True
    zero_columns: int = 0
    invariant: str | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.achieved_distance > self.d_opt:
            raise VerificationError(
                f"achieved distance {self.achieved_distance} exceeds d_opt {self.d_opt}"
            )
        if self.success and self.achieved_distance < self.distance_bound:
            raise VerificationError(
                f"report marked successful with d={self.achieved_distance} "
                f"below the guaranteed {self.distance_bound}"
            )

    @property
    def gap(self) -> int:
        return self.d_opt - self.achieved_distance

    def to_json(self) -> dict[str, Any]:
        data = asdict(self)
        data["group_sizes"] = list(self.group_sizes)
        if not self.extra:
            data.pop("extra")
        if self.invariant is None:
            data.pop("invariant")
        return data

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> ConstructionReport:
        return cls(
            method=str(data["method"]),
            n=int(data["n"]),
            k=int(data["k"]),
            r=int(data["r"]),
            delta=int(data["delta"]),
            q=int(data["q"]),
            group_sizes=tuple(int(s) for s in data["group_sizes"]),
            z=int(data["z"]),
            distance_bound=int(data["distance_bound"]),
            d_opt=int(data["d_opt"]),
            achieved_distance=int(data["achieved_distance"]),
            is_optimal=bool(data["is_optimal"]),
            attempts=int(data["attempts"]),
            seed=None if data.get("seed") is None else int(data["seed"]),
            success=bool(data.get("success", True)),
            zero_columns=int(data.get("zero_columns", 0)),
            invariant=data.get("invariant"),
            extra=dict(data.get("extra") or {}),
        )
