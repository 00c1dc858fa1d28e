"""Structured run reports: JSON with a fixed key order, cases sorted by name."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "inconclusive")


@dataclass(frozen=True)
class Case:
    name: str
    status: str
    measured: object = None
    bound: object = None
    tolerance: object = None
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "measured": _plain(self.measured),
            "bound": _plain(self.bound),
            "tolerance": _plain(self.tolerance),
            "detail": self.detail,
        }


def status_of(ok: bool) -> str:
    return "pass" if ok else "fail"


@dataclass
class Report:
    suite: str
    seed: int
    cases: list[Case] = field(default_factory=list)
    runtime_ms: float = 0.0

    def add(self, case: Case) -> None:
        self.cases.append(case)

    @property
    def failed(self) -> list[Case]:
        return [c for c in self.cases if c.status == "fail"]

    @property
    def inconclusive(self) -> list[Case]:
        return [c for c in self.cases if c.status == "inconclusive"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "ok": self.ok,
            "cases": [c.as_dict() for c in sorted(self.cases, key=lambda c: c.name)],
            "runtime_ms": round(self.runtime_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, allow_nan=False) + "\n"

    def summary_lines(self) -> list[str]:
        return [f"{c.status.upper():12s} {c.name}" + (f"  ({c.detail})" if c.detail else "")
                for c in sorted(self.cases, key=lambda c: c.name)]


def _plain(v):
    """JSON-safe rendering: tuples become lists, non-finite floats become strings."""
    if isinstance(v, float):
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if hasattr(v, "item"):  # numpy scalars
        return _plain(v.item())
    return str(v)


__all__ = ["STATUSES", "Case", "status_of", "Report"]
