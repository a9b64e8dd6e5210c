"""Structured verdicts shared by every check."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
TRUNCATED = "truncated"
ERROR = "error"


def jsonable(obj: Any) -> Any:
    """Convert check payloads (polynomials, tuples, sets, fractions) to JSON types."""
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(x) for x in obj)
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


@dataclass
class Report:
    check: str
    verdict: str
    witnesses: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    input: str | None = None
    timings: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "input": self.input,
            "check": self.check,
            "verdict": self.verdict,
            "parameters": jsonable(self.parameters),
            "witnesses": jsonable(self.witnesses),
            "details": jsonable(self.details),
            "notes": list(self.notes),
        }
        if timings:
            out["timings"] = jsonable(self.timings)
        return out


def verdict_of(ok: bool) -> str:
    return PASS if ok else FAIL
