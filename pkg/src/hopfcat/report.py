"""Validation reports shared by all checkers."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

DEFAULT_TOLERANCE = 1e-9
TOLERANCE_ENV = "HOPFCAT_TOLERANCE"


def default_tolerance() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOLERANCE
    value = float(raw)
    if not value > 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive, got {raw!r}")
    return value


@dataclass
class Violation:
    """One failed instance of an identity."""

    check: str
    where: tuple
    residual: float

    def as_dict(self) -> dict[str, Any]:
        return {"check": self.check, "where": [_plain(w) for w in self.where], "residual": self.residual}


@dataclass
class ValidationReport:
    """Outcome of a checker: residual maxima per identity plus violating instances.

    ``violations`` is capped at ``max_violations`` entries per report, but
    ``count`` always reflects the full number.
    """

    name: str
    tolerance: float
    residuals: dict[str, float] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    count: int = 0
    notes: list[str] = field(default_factory=list)
    max_violations: int = 50

    def record(self, check: str, where: tuple, residual: float) -> None:
        residual = float(residual)
        if residual > self.residuals.get(check, 0.0):
            self.residuals[check] = residual
        else:
            self.residuals.setdefault(check, 0.0)
        if residual >= self.tolerance:
            self.count += 1
            if len(self.violations) < self.max_violations:
                self.violations.append(Violation(check, tuple(where), residual))

    def fail(self, check: str, where: tuple, message: str | None = None) -> None:
        """Record a non-numeric violation (e.g. a combinatorial axiom)."""
        self.record(check, where, float("inf"))
        if message:
            self.notes.append(message)

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        for key, value in other.residuals.items():
            k = prefix + key
            self.residuals[k] = max(self.residuals.get(k, 0.0), value)
        for v in other.violations:
            if len(self.violations) < self.max_violations:
                self.violations.append(Violation(prefix + v.check, v.where, v.residual))
        self.count += other.count
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return self.count == 0

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "max_residual": _finite(self.max_residual),
            "residuals": {k: _finite(v) for k, v in sorted(self.residuals.items())},
            "violation_count": self.count,
            "violations": [v.as_dict() for v in self.violations],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.name}: {status} (max residual {self.max_residual:.3e}, tol {self.tolerance:.1e})"]
        for v in self.violations[:10]:
            lines.append(f"  {v.check} at {v.where}: residual {v.residual:.3e}")
        if self.count > 10:
            lines.append(f"  ... {self.count - 10} more")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _finite(x: float) -> float | str:
    return x if x != float("inf") else "inf"


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if hasattr(x, "item"):
        return x.item()
    return x
