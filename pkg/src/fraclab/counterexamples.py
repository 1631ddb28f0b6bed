"""Sharpness witnesses: explicit functions whose fractional integral leaves
the target Lebesgue space, plus a quantitative divergence probe.

Each case builds a member of the closed-form power/log family whose input
norm is finite while a truncated norm of the image blows up as the
truncation is removed.  The probe fits the blow-up rate on a log-log scale
so the divergence can be asserted numerically.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .bounds import RegimeError
from .funcspace import INF, ClosedFormFunction, lp_norm
from .special import gamma, log_gamma

__all__ = [
    "CASE_IDS",
    "CounterexampleSpec",
    "DivergenceProbe",
    "RegimeError",
    "make_counterexample",
    "divergence_probe",
    "write_probe_csv",
    "input_norm",
]

CASE_IDS = (
    "bounded_super_finite",
    "bounded_super_inf",
    "halfline_sub",
    "halfline_super",
    "p1_critical_log",
    "p1_halfline_low",
    "p1_halfline_high",
    "p1_halfline_inf",
)


@dataclass
class CounterexampleSpec:
    """One unboundedness case: exponents plus the free exponent beta_eta.

    beta_eta defaults to the midpoint of the open interval admissible for
    the case; any override must stay strictly inside that interval.
    """

    case_id: str
    p: float
    alpha: float
    eta: float
    beta_eta: float | None = None
    t0: float = 0.0
    t1: float = 1.0

    def __post_init__(self):
        if self.case_id not in CASE_IDS:
            raise ValueError(f"unknown case_id {self.case_id!r}; "
                             f"expected one of {CASE_IDS}")
        if self.t1 <= self.t0:
            raise ValueError("need t1 > t0")
        lo, hi = self.beta_interval()
        if not lo < hi:
            raise ValueError(
                f"{self.case_id}: admissible interval ({lo}, {hi}) for "
                "beta_eta is empty with these exponents")
        if self.beta_eta is None:
            self.beta_eta = 0.5 * (lo + hi)
        if not (lo < self.beta_eta < hi):
            raise ValueError(
                f"{self.case_id}: beta_eta={self.beta_eta} must lie strictly "
                f"inside ({lo}, {hi})")

    @property
    def critical_eta(self):
        if self.p * self.alpha >= 1.0:
            return INF
        return self.p / (1.0 - self.p * self.alpha)

    def beta_interval(self):
        """Open interval from which beta_eta may be chosen for this case."""
        p, a, eta = self.p, self.alpha, self.eta
        cid = self.case_id
        if cid in ("bounded_super_finite", "bounded_super_inf",
                   "halfline_sub", "halfline_super"):
            if not (p > 1.0 and 0.0 < a < 1.0 / p):
                raise ValueError(f"{cid}: need p > 1 and 0 < alpha < 1/p")
        else:
            if p != 1.0 or not 0.0 < a < 1.0:
                raise ValueError(f"{cid}: need p = 1 and alpha in (0, 1)")
        if cid == "bounded_super_finite":
            if not self.critical_eta < eta < INF:
                raise ValueError(f"{cid}: need eta in ({self.critical_eta}, inf)")
            return (a + 1.0 / eta, 1.0 / p)
        if cid == "bounded_super_inf":
            if eta != INF:
                raise ValueError(f"{cid}: need eta = inf")
            return (a, 1.0 / p)
        if cid == "halfline_sub":
            if not 1.0 <= eta < self.critical_eta:
                raise ValueError(f"{cid}: need eta in [1, {self.critical_eta})")
            return (1.0 / p, min(1.0, a + 1.0 / eta))
        if cid == "halfline_super":
            if eta == INF:
                return (a, 1.0 / p)
            if not eta > self.critical_eta:
                raise ValueError(f"{cid}: need eta in ({self.critical_eta}, inf]")
            return (a + 1.0 / eta, 1.0 / p)
        if cid == "p1_critical_log":
            if not math.isclose(eta, 1.0 / (1.0 - a), rel_tol=1e-12):
                raise ValueError(f"{cid}: need eta = 1/(1-alpha) = {1.0 / (1.0 - a)}")
            return (1.0, 2.0 - a)
        if cid == "p1_halfline_low":
            if not 1.0 <= eta < 1.0 / (1.0 - a):
                raise ValueError(f"{cid}: need eta in [1, {1.0 / (1.0 - a)})")
            return (1.0, a + 1.0 / eta)
        if cid == "p1_halfline_high":
            if not 1.0 / (1.0 - a) <= eta < INF:
                raise ValueError(f"{cid}: need eta in [{1.0 / (1.0 - a)}, inf)")
            return (1.0, 1.0 + 1.0 / eta)
        # p1_halfline_inf
        if eta != INF:
            raise ValueError(f"{cid}: need eta = inf")
        return (a, 1.0)


def make_counterexample(spec):
    """The explicit witness function for the given case (unit direction)."""
    t0, t1, b = spec.t0, spec.t1, spec.beta_eta
    length = t1 - t0
    if spec.case_id in ("bounded_super_finite", "bounded_super_inf",
                        "p1_halfline_inf"):
        return ClosedFormFunction(t0, (t0, t1), c=1.0, beta=b)
    if spec.case_id == "halfline_super":
        return ClosedFormFunction(t0, (t0, t0 + 1.0), c=1.0, beta=b)
    if spec.case_id in ("halfline_sub", "p1_halfline_low"):
        return ClosedFormFunction(t0, (t0 + 1.0, INF), c=1.0, beta=b)
    # log family, supported on (t0, t1] with scale 2(t1 - t0)
    return ClosedFormFunction(t0, (t0, t1), c=2.0 * length, beta=1.0,
                              log_exp=b, log_scale=2.0 * length)


@dataclass
class DivergenceProbe:
    """Truncated image-norm growth along a schedule of cutoffs.

    truncated_norm_power holds N(eps) = ||J^alpha f||^eta on the truncated
    window (the essential sup when eta = inf); fitted_slope is the least
    squares slope of log N against log eps, to be compared against
    theoretical_exponent (negative means divergence as eps -> 0).
    """

    route: str
    eps: np.ndarray
    truncated_norm_power: np.ndarray
    fitted_slope: float
    theoretical_exponent: float
    context: dict = field(default_factory=dict)


def _image_coefficient(alpha, beta):
    """Gamma(1-beta)/Gamma(1+alpha-beta), the exact power-image factor."""
    return math.exp(log_gamma(1.0 - beta) - log_gamma(1.0 + alpha - beta))


def _probe_power_origin(f, alpha, eta, eps):
    """Blow-up at t0 for a pure power supported from t0.

    The image is exactly R (t-t0)^(alpha-beta) on the support, so the
    truncated norm power is an explicit integral of a power of t - t0.
    """
    beta = f.beta
    r = abs(f.c) * _image_coefficient(alpha, beta)
    upper = f.support[1] - f.t0
    if math.isinf(eta):
        e = alpha - beta
        if e >= 0.0:
            raise RegimeError("image is bounded near t0; nothing diverges")
        return r * eps ** e, e
    e = (alpha - beta) * eta + 1.0
    if e >= 0.0:
        raise RegimeError(
            f"truncated norm converges (exponent {e} >= 0); the case is "
            "not supercritical")
    n = r ** eta * (eps ** e - upper ** e) / (-e)
    return n, e


def _probe_halfline_growth(f, alpha, eta, eps):
    """Blow-up at infinity for a power supported on (t0+1, inf).

    Uses the proof's lower bound
        ||J f||^eta >= Gamma(alpha+1)^(-eta) * int_1^r (w-1)^(a eta) w^(-b eta) dw
    evaluated at r = 1/eps, which grows like r^((a-b) eta + 1).
    """
    if math.isinf(eta):
        raise RegimeError("half-line growth probe needs a finite eta")
    beta = f.beta
    e = (alpha - beta) * eta + 1.0
    if e <= 0.0:
        raise RegimeError(
            f"lower-bound tail integral converges (exponent {e} <= 0)")
    scale = gamma(alpha + 1.0) ** (-eta)
    out = np.empty_like(eps)
    for i, ep in enumerate(eps):
        r = 1.0 / ep
        val, _ = integrate.quad(
            lambda w: (w - 1.0) ** (alpha * eta) * w ** (-beta * eta),
            1.0, r, limit=200, points=[1.0] if r < 50 else None)
        out[i] = scale * val
    return out, -e


def _probe_log_family(f, alpha, eta, eps):
    """Blow-up at t0 for the log family (critical p = 1 cases).

    Lower bound of the truncated norm power, after u = ln(kappa/(s-t0)):
        N(eps) = [kappa/(Gamma(a)(b-1))]^eta * kappa^((a-1)eta+1)
                 * int_{ln(kappa/L)}^{ln(kappa/eps)} e^{((1-a)eta-1)u} u^((1-b)eta) du
    For eta = 1/(1-alpha) the exponential factor is 1 and N grows like a
    power of the logarithm: divergent but with log-log slope ~ 0.
    """
    if math.isinf(eta):
        raise RegimeError("log-family probe needs a finite eta")
    b = f.log_exp
    kappa = f.log_scale
    upper = f.support[1] - f.t0
    c = (abs(f.c) / (gamma(alpha) * (b - 1.0))) ** eta * kappa ** ((alpha - 1.0) * eta + 1.0)
    w = (1.0 - alpha) * eta - 1.0
    if w < -1e-12:
        raise RegimeError("eta below 1/(1-alpha); the truncated norm converges")
    u_lo = math.log(kappa / upper)
    out = np.empty_like(eps)
    for i, ep in enumerate(eps):
        u_hi = math.log(kappa / ep)
        val, _ = integrate.quad(
            lambda u: math.exp(w * u) * u ** ((1.0 - b) * eta),
            u_lo, u_hi, limit=200)
        out[i] = c * val
    return out, (alpha - 1.0) * eta + 1.0


def divergence_probe(f, alpha, eta, eps_schedule):
    """Measure the divergence rate of the image norm of a witness function.

    Returns a DivergenceProbe whose fitted log-log slope should match the
    theoretical exponent; raises RegimeError when the requested exponents
    make the truncated norms converge instead.
    """
    eps = np.asarray(eps_schedule, dtype=np.float64)
    if eps.size < 2 or np.any(eps <= 0.0) or np.any(np.diff(eps) >= 0.0):
        raise ValueError("eps_schedule must be >= 2 strictly decreasing positives")
    if f.log_exp > 0.0:
        route = "log_tail"
        n, exponent = _probe_log_family(f, alpha, eta, eps)
    elif f.support[0] > f.t0:
        route = "halfline_growth"
        n, exponent = _probe_halfline_growth(f, alpha, eta, eps)
    else:
        route = "power_origin"
        n, exponent = _probe_power_origin(f, alpha, eta, eps)
    slope = float(np.polyfit(np.log(eps), np.log(n), 1)[0])
    ctx = {"alpha": alpha, "eta": None if math.isinf(eta) else eta,
           "beta": f.beta if f.log_exp == 0.0 else f.log_exp}
    return DivergenceProbe(route, eps, np.asarray(n, dtype=np.float64),
                           slope, float(exponent), ctx)


def write_probe_csv(probe, path):
    """Serialize a probe to CSV, one row per cutoff."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eps", "truncated_norm_power", "log_eps", "log_N",
                         "fitted_slope", "theoretical_exponent"])
        for ep, n in zip(probe.eps, probe.truncated_norm_power):
            writer.writerow([repr(float(ep)), repr(float(n)),
                             repr(float(math.log(ep))), repr(float(math.log(n))),
                             repr(probe.fitted_slope),
                             repr(probe.theoretical_exponent)])


def input_norm(spec, f=None):
    """||f||_{L^p} over the witness's full domain (finite by construction)."""
    if f is None:
        f = make_counterexample(spec)
    return lp_norm(f, spec.p)
