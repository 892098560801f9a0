"""Outcome records shared by every verification routine."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    """Outcome of one verification.

    ``residual`` is ``None`` for exact checks (which either pass or report
    ``first_mismatch``) and an mpmath number for numeric ones.
    """

    name: str
    anchor: str
    passed: bool
    params: dict[str, Any] = field(default_factory=dict)
    residual: Any = None
    tolerance: Any = None
    first_mismatch: int | None = None
    details: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.residual is not None:
            extra = f" residual={_short(self.residual)}"
        if self.first_mismatch is not None:
            extra += f" first_mismatch=q^{self.first_mismatch}"
        return f"[{status}] {self.name} ({self.anchor}){extra}"


def _short(x) -> str:
    try:
        import mpmath
        return mpmath.nstr(x, 5)
    except (TypeError, ValueError):
        return str(x)


def exact_check(name: str, anchor: str, lhs, rhs, **params) -> CheckResult:
    """Compare two QSeries coefficient by coefficient."""
    mismatch = lhs.first_mismatch(rhs)
    order = min(lhs.order, rhs.order)
    passed = mismatch is None and lhs.order >= params.get("order", 0) \
        and rhs.order >= params.get("order", 0)
    return CheckResult(name, anchor, passed, params=dict(params, checked_order=order),
                       first_mismatch=mismatch)
