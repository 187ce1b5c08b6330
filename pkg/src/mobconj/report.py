"""Structured pass/fail records for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1


def _render(value: Any) -> Any:
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _render(v) for k, v in value.items()}
    return str(value)


@dataclass
class VerificationReport:
    """Outcome of one identity instance.

    ``sides`` holds every side of the identity in canonical form (strings for
    polynomials, ints for counts); ``passed`` is true iff they are all equal.
    ``locus`` names the first failing interval, subset or point.
    """

    identity: str
    passed: bool
    sides: dict[str, Any] = field(default_factory=dict)
    locus: Any = None
    details: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    parts: list["VerificationReport"] = field(default_factory=list)

    @classmethod
    def combine(cls, identity: str, parts: list["VerificationReport"], **kw) -> "VerificationReport":
        return cls(identity, all(p.passed for p in parts), parts=list(parts), **kw)

    @property
    def lhs(self):
        return next(iter(self.sides.values()), None)

    @property
    def rhs(self):
        vals = list(self.sides.values())
        return vals[1] if len(vals) > 1 else None

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "identity": self.identity,
            "pass": self.passed,
            "sides": _render(self.sides),
        }
        if self.locus is not None:
            out["locus"] = _render(self.locus)
        out.update(_render(self.details))
        if self.notes:
            out["notes"] = list(self.notes)
        if self.parts:
            out["parts"] = [p.to_dict(timing) for p in self.parts]
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        sides = " = ".join(f"{k}: {_render(v)}" for k, v in self.sides.items())
        text = f"[{status}] {self.identity}" + (f": {sides}" if sides else "")
        if self.locus is not None and not self.passed:
            text += f" (first failure at {_render(self.locus)})"
        for p in self.parts:
            text += "\n  " + p.summary().replace("\n", "\n  ")
        return text


def all_equal(values) -> bool:
    values = list(values)
    return all(v == values[0] for v in values[1:])
