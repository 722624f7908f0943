"""Check results shared by every verification module."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable


@dataclass
class VerificationResult:
    name: str
    passed: bool
    residual_terms: int
    millis: float
    residual: Any = None
    details: dict = field(default_factory=dict)
    parts: list["VerificationResult"] = field(default_factory=list)

    def flatten(self) -> list["VerificationResult"]:
        """Leaf checks in order; a result without parts is its own leaf."""
        if not self.parts:
            return [self]
        return [leaf for p in self.parts for leaf in p.flatten()]

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "pass": self.passed,
            "residual_terms": self.residual_terms,
            "millis": round(self.millis, 3) if timing else 0,
        }
        if self.details:
            out["details"] = self.details
        return out


def residual_size(residual) -> int:
    if residual is None:
        return 0
    if hasattr(residual, "support_size"):
        return residual.support_size()
    if hasattr(residual, "nonzero_count"):
        return residual.nonzero_count()
    if isinstance(residual, (int, float)):
        return int(residual)
    raise TypeError(f"cannot size residual of type {type(residual).__name__}")


def timed(name: str, compute: Callable[[], Any], **details) -> VerificationResult:
    """Run ``compute`` (returning a residual) and wrap the outcome.

    The residual may be an algebra element, a matrix, an integer count, or a
    (residual, details) pair.  Zero support means the check passed.
    """
    start = time.perf_counter()
    out = compute()
    millis = (time.perf_counter() - start) * 1000
    extra = dict(details)
    if isinstance(out, tuple):
        out, more = out
        extra.update(more)
    size = residual_size(out)
    return VerificationResult(name, size == 0, size, millis, out, extra)


def combine(name: str, parts: list[VerificationResult], **details) -> VerificationResult:
    total = sum(p.residual_terms for p in parts)
    millis = sum(p.millis for p in parts)
    passed = all(p.passed for p in parts)
    return VerificationResult(name, passed, total, millis, None, dict(details), list(parts))
