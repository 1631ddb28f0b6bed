"""Verification records shared by the norm and bound modules."""

import json
from dataclasses import dataclass, field

__all__ = ["BoundReport"]


@dataclass
class BoundReport:
    """Observed lhs vs rhs for one inequality instance.

    ``holds`` means lhs <= rhs up to the stated tolerance; ``slack`` is
    rhs - lhs (finite only when both sides are).
    """

    inequality_id: str
    lhs: float
    rhs: float
    constant_used: float
    holds: bool
    slack: float
    context: dict = field(default_factory=dict)
    seed: int | None = None

    @classmethod
    def check(cls, inequality_id, lhs, rhs, constant_used, context=None,
              rtol=1e-6, atol=0.0, seed=None):
        lhs = float(lhs)
        rhs = float(rhs)
        holds = lhs <= rhs + rtol * max(abs(lhs), abs(rhs)) + atol
        slack = rhs - lhs
        return cls(inequality_id, lhs, rhs, float(constant_used), holds, slack,
                   dict(context or {}), seed)

    def to_dict(self):
        return {
            "inequality_id": self.inequality_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "constant_used": self.constant_used,
            "holds": self.holds,
            "slack": self.slack,
            "context": self.context,
            "seed": self.seed,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)
