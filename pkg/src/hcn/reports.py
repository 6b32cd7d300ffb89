"""Report type shared by every identity check."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from hcn.arith import rational_str

__all__ = ["IdentityReport", "jsonable"]


@dataclass
class IdentityReport:
    """Both sides of one identity at one parameter point, compared exactly."""

    identity: str
    params: dict
    lhs: object
    rhs: object
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": dict(self.params),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "pass": self.passed,
            "terms": [
                {"name": str(k), "value": jsonable(v)}
                for k, v in self.detail.items()
            ],
        }


def jsonable(x):
    """Render exact values for JSON: rationals as 'num/den' strings."""
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, bool) or isinstance(x, int) or isinstance(x, str) or x is None:
        return x
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)
