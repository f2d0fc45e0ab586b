"""Precision settings and the result record shared by every numeric routine."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

import mpmath

from .errors import DomainError

__all__ = ["PrecisionContext", "SumResult", "TAIL_MODES"]

TAIL_MODES = ("zeta-accelerated", "pnt-estimate")


@dataclass(frozen=True)
class PrecisionContext:
    """Working digits, direct-summation limit and tail treatment."""

    dps: int = 30
    limit: int = 10**6
    tail_mode: str = "zeta-accelerated"

    def __post_init__(self):
        if self.dps < 15:
            raise DomainError("working precision below 15 digits is not supported")
        if self.limit < 100:
            raise DomainError("direct-summation limit must be at least 100")
        if self.tail_mode not in TAIL_MODES:
            raise DomainError(f"tail mode must be one of {TAIL_MODES}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def workdps(self, extra: int = 10):
        return mpmath.workdps(self.dps + extra)


@dataclass
class SumResult:
    name: str
    value: Any  # mpf, Fraction or float
    error_bound: float
    rigorous: bool
    context: PrecisionContext = field(default_factory=PrecisionContext)
    details: dict[str, Any] = field(default_factory=dict)

    def __float__(self) -> float:
        return float(self.value)

    def encloses(self, x) -> bool:
        return abs(mpmath.mpf(x) - mpmath.mpf(self.value)) <= self.error_bound

    def to_dict(self) -> dict[str, Any]:
        if isinstance(self.value, mpmath.mpf):
            text = mpmath.nstr(self.value, self.context.dps, strip_zeros=False)
        else:
            text = repr(float(self.value)) if not isinstance(self.value, int) else str(self.value)
        out = {
            "name": self.name,
            "value": text,
            "error_bound": float(self.error_bound),
            "rigorous": self.rigorous,
            "context": self.context.to_dict(),
        }
        if self.details:
            out["details"] = self.details
        return out
