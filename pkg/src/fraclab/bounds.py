"""Explicit operator-norm constants and the inequality verification harness.

The weak-type constant K comes straight from its closed formula; the strong
constant C is obtained by minimizing the Marcinkiewicz interpolation bound
over admissible exponent pairs, so it is an upper bound for the true norm
(possibly a generous one) and is recorded together with the minimizing pair
for reproducibility.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .fracint import rl_integral_grid
from .funcspace import ExponentTriple, lp_norm, weak_lp_quasinorm
from .reports import BoundReport
from .special import gamma, log_gamma

__all__ = [
    "InterpolationChoice",
    "RegimeError",
    "BoundReport",
    "weak_type_constant",
    "marcinkiewicz_constant",
    "strong_type_constant",
    "verify_into_itself",
    "verify_weak_type",
    "verify_strong_type",
]


class RegimeError(ValueError):
    """The (p, alpha, q) regime is not covered by a boundedness statement."""


@dataclass(frozen=True)
class InterpolationChoice:
    """Admissible interpolation pair 1 < p1 < p < p2 < 1/alpha.

    The weak endpoints are (p_i, q_i) with q_i = p_i/(1 - p_i alpha) and the
    mixing parameter theta = p2 (p - p1) / [p (p2 - p1)] reproduces p_theta = p
    and q_theta = p/(1 - p alpha).
    """

    alpha: float
    p: float
    p1: float
    p2: float

    def __post_init__(self):
        if not (1.0 < self.p1 < self.p < self.p2 < 1.0 / self.alpha):
            raise ValueError(
                f"need 1 < p1 < p < p2 < 1/alpha, got p1={self.p1}, "
                f"p={self.p}, p2={self.p2}, 1/alpha={1.0 / self.alpha}")
        if abs((1.0 - self.theta) / self.p1 + self.theta / self.p2
               - 1.0 / self.p) > 1e-12:
            raise ValueError("interpolation identity failed for p")

    @property
    def q1(self):
        return self.p1 / (1.0 - self.p1 * self.alpha)

    @property
    def q2(self):
        return self.p2 / (1.0 - self.p2 * self.alpha)

    @property
    def theta(self):
        return self.p2 * (self.p - self.p1) / (self.p * (self.p2 - self.p1))

    @property
    def p_theta(self):
        return self.p

    @property
    def q_theta(self):
        return self.p / (1.0 - self.p * self.alpha)

    def to_dict(self):
        return {"alpha": self.alpha, "p": self.p, "p1": self.p1, "p2": self.p2,
                "q1": self.q1, "q2": self.q2, "theta": self.theta,
                "q_theta": self.q_theta}


def weak_type_constant(alpha, p):
    """The weak-type (p, p/(1-p alpha)) constant

        K = 2 (p-1)^(a(p-1)) / [a^(1-pa) Gamma(a) (1-ap)^(a(p-1))]   (p > 1)
        K = 2 / [a^(1-a) Gamma(a)]                                   (p = 1)

    valid for p >= 1 and 0 < alpha < 1/p.  Evaluated in log domain.
    """
    if p < 1.0:
        raise ValueError(f"need p >= 1, got {p}")
    if not (0.0 < alpha < 1.0 / p):
        raise ValueError(f"need 0 < alpha < 1/p, got alpha={alpha}, p={p}")
    if p == 1.0:
        log_k = math.log(2.0) - (1.0 - alpha) * math.log(alpha) - log_gamma(alpha)
    else:
        e = alpha * (p - 1.0)
        log_k = (math.log(2.0) + e * math.log(p - 1.0)
                 - (1.0 - p * alpha) * math.log(alpha)
                 - log_gamma(alpha) - e * math.log(1.0 - alpha * p))
    return math.exp(log_k)


def marcinkiewicz_constant(choice, norm1, norm2):
    """Interpolated strong bound M = K * norm1^(1-theta) * norm2^theta with

        K = 2 q^(1/q) [ (p1/p)^(q1/p1)/(q - q1) + (p2/p)^(q2/p2)/(q2 - q) ]^(1/q)

    where q = q_theta; norm_i are the weak-type (p_i, q_i) norms.
    """
    if norm1 <= 0.0 or norm2 <= 0.0:
        raise ValueError("weak-type norms must be positive")
    q = choice.q_theta
    q1, q2 = choice.q1, choice.q2
    if not (q1 < q < q2):
        raise ValueError(f"need q1 < q_theta < q2, got {q1}, {q}, {q2}")
    bracket = ((choice.p1 / choice.p_theta) ** (q1 / choice.p1) / (q - q1)
               + (choice.p2 / choice.p_theta) ** (q2 / choice.p2) / (q2 - q))
    k = 2.0 * q ** (1.0 / q) * bracket ** (1.0 / q)
    return k * norm1 ** (1.0 - choice.theta) * norm2 ** choice.theta


@lru_cache(maxsize=128)
def strong_type_constant(alpha, p, search_grid_size=32):
    """Working strong-type constant: the Marcinkiewicz bound minimized over
    a grid of admissible (p1, p2) pairs, with the weak constants as the
    endpoint norms.  Returns (value, minimizing choice)."""
    if not (p > 1.0 and 0.0 < alpha < 1.0 / p):
        raise ValueError(f"need p > 1 and 0 < alpha < 1/p, got p={p}, alpha={alpha}")
    g = int(search_grid_size)
    if g < 1:
        raise ValueError("search grid must be nonempty")
    hi2 = 1.0 / alpha
    if hi2 - p < 1e-12 or p - 1.0 < 1e-12:
        raise ValueError("admissible (p1, p2) region is numerically degenerate")
    best = None
    for i in range(1, g + 1):
        p1 = 1.0 + (p - 1.0) * i / (g + 1.0)
        k1 = weak_type_constant(alpha, p1)
        for j in range(1, g + 1):
            p2 = p + (hi2 - p) * j / (g + 1.0)
            choice = InterpolationChoice(alpha, p, p1, p2)
            m = marcinkiewicz_constant(choice, k1, weak_type_constant(alpha, p2))
            if best is None or m < best[0]:
                best = (m, choice)
    return best


def _grid_tolerance(f):
    # additive guard proportional to the mesh resolution, so quadrature
    # error on the left side cannot produce spurious violations
    return float(max(1e-12, (f.nodes[1:] - f.nodes[:-1]).max()))


def verify_into_itself(f, alpha, p, rtol=1e-6, seed=None):
    """||J^a f||_p <= (t1-t0)^a / Gamma(a+1) * ||f||_p."""
    if alpha <= 0.0:
        raise ValueError(f"need alpha > 0, got {alpha}")
    image = rl_integral_grid(f, alpha)
    const = (f.t1 - f.t0) ** alpha / gamma(alpha + 1.0)
    lhs = lp_norm(image, p)
    rhs = const * lp_norm(f, p)
    ctx = {"p": p, "alpha": alpha, "interval": [f.t0, f.t1]}
    atol = _grid_tolerance(f) * max(abs(lhs), abs(rhs))
    return BoundReport.check("into_itself", lhs, rhs, const, ctx,
                             rtol=rtol, atol=atol, seed=seed)


def verify_weak_type(f, alpha, p, rtol=1e-6, seed=None):
    """[J^a f]_{w,p/(1-pa)} <= K_{a,p} ||f||_p."""
    const = weak_type_constant(alpha, p)
    q = p / (1.0 - p * alpha)
    image = rl_integral_grid(f, alpha)
    lhs = weak_lp_quasinorm(image, q)
    rhs = const * lp_norm(f, p)
    ctx = ExponentTriple(p, alpha, q).to_dict()
    ctx["interval"] = [f.t0, f.t1]
    atol = _grid_tolerance(f) * max(abs(lhs), abs(rhs))
    return BoundReport.check("weak_type", lhs, rhs, const, ctx,
                             rtol=rtol, atol=atol, seed=seed)


def verify_strong_type(f, alpha, p, q, rtol=1e-6, seed=None,
                       search_grid_size=32):
    """||J^a f||_q <= C ||f||_p in the bounded regimes.

    q = p/(1-pa) uses the interpolated constant alone; q below critical
    picks up the interval-length embedding factor; p = 1 uses the explicit
    weak-constant factor and requires q < 1/(1-alpha).  Supercritical
    exponents raise RegimeError (see the counterexample module).
    """
    triple = ExponentTriple(p, alpha, q)
    regime = triple.regime()
    if regime == "supercritical":
        raise RegimeError(
            f"q={q} is beyond the critical exponent {triple.critical_q}; "
            "boundedness fails there (counterexample module)")
    if not (0.0 < alpha < 1.0 / p):
        raise RegimeError(f"constants require 0 < alpha < 1/p, got {alpha}")
    length = f.t1 - f.t0
    if p == 1.0:
        if regime == "critical":
            raise RegimeError(
                "p=1 at the critical exponent q=1/(1-alpha) is unbounded")
        k1 = weak_type_constant(alpha, 1.0)
        e = 1.0 - q * (1.0 - alpha)
        const = k1 * (length ** e / e) ** (1.0 / q)
        base = k1
    else:
        c_ap, _ = strong_type_constant(alpha, p, search_grid_size)
        base = c_ap
        if regime == "critical":
            const = c_ap
        else:
            const = c_ap * length ** ((p - q) / (p * q) + alpha)
    image = rl_integral_grid(f, alpha)
    lhs = lp_norm(image, q)
    rhs = const * lp_norm(f, p)
    ctx = triple.to_dict()
    ctx["interval"] = [f.t0, f.t1]
    atol = _grid_tolerance(f) * max(abs(lhs), abs(rhs))
    rep = BoundReport.check("strong_type", lhs, rhs, const, ctx,
                            rtol=rtol, atol=atol, seed=seed)
    rep.context["base_constant"] = base
    return rep
