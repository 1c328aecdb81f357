"""Check records shared by the library reports and the verification harness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

__all__ = ["CheckRecord", "PASS", "FAIL", "DIAGNOSTIC", "ERROR", "compare", "diagnostic"]

PASS, FAIL, DIAGNOSTIC, ERROR = "pass", "fail", "diagnostic", "error"


@dataclass
class CheckRecord:
    """One measured inequality ``lhs <= rhs``; ``slack = rhs - lhs``.

    ``diagnostic`` records carry measurements whose bound has an unspecified
    constant; they never count as failures.
    """

    name: str
    citation: str
    lhs: float
    rhs: float
    status: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    runtime: float | None = None
    message: str = ""

    @property
    def slack(self) -> float:
        return float(self.rhs) - float(self.lhs)

    @property
    def passed(self) -> bool:
        return self.status in (PASS, DIAGNOSTIC)

    @property
    def hard_failure(self) -> bool:
        return self.status in (FAIL, ERROR)


def compare(
    name: str,
    citation: str,
    lhs: float,
    rhs: float,
    tol: float = 1e-9,
    params: dict[str, Any] | None = None,
    *,
    relative: bool = False,
    seed: int | None = None,
) -> CheckRecord:
    """Pass iff ``lhs <= rhs + tol`` (``tol`` scaled by ``max(1, |rhs|)`` when ``relative``)."""
    lhs, rhs = float(lhs), float(rhs)
    slack_tol = tol * max(1.0, abs(rhs)) if relative else tol
    ok = math.isfinite(lhs) and math.isfinite(rhs) and lhs <= rhs + slack_tol
    return CheckRecord(name, citation, lhs, rhs, PASS if ok else FAIL, dict(params or {}), seed)


def diagnostic(
    name: str, citation: str, lhs: float, rhs: float, params: dict[str, Any] | None = None
) -> CheckRecord:
    return CheckRecord(name, citation, float(lhs), float(rhs), DIAGNOSTIC, dict(params or {}))
