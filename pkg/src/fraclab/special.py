"""Scalar special functions used by every closed-form expression.

Two ingredients live here: the log-domain gamma function (constants in
this package are built from ratios of Gamma at small arguments, where the
plain Gamma overflows) and the profile

    delta(t) = t^(beta+1-alpha) * integral_t^1 (1-w)^(-beta) w^(alpha-2) dw

together with its maximum over [0, 1].  The profile is continuous on
[0, 1] with delta(0) = delta(1) = 0 and appears in the translation-modulus
bound of the compactness diagnostics.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DeltaProfileParams",
    "log_gamma",
    "gamma",
    "delta_profile",
    "delta_max",
    "tail_integral",
]


@dataclass(frozen=True)
class DeltaProfileParams:
    """Exponent pair for the delta profile, requiring 0 < beta < alpha < 1."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 < self.beta < self.alpha < 1.0):
            raise ValueError(
                f"need 0 < beta < alpha < 1, got alpha={self.alpha}, beta={self.beta}"
            )


def log_gamma(x):
    """ln Gamma(x) for x > 0 (log-domain, safe for tiny and large x)."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)):
        raise ValueError(f"log_gamma needs a finite real argument, got {x!r}")
    if x <= 0.0:
        raise ValueError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def gamma(x):
    """Gamma(x) for x > 0."""
    return math.exp(log_gamma(x))


# 16-point Gauss-Legendre rule on [0, 1], used per geometric panel.
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W

# Terms of the binomial series for (1 - y)^(alpha - 2); ratio <= 1/2 on the
# range we use it, so 72 terms put the tail near 1e-20.
_SERIES_TERMS = 72


def _tail_upper_series(c, alpha, beta):
    """integral_c^1 (1-w)^(-beta) w^(alpha-2) dw for c >= 1/2 (vectorized).

    With y = 1 - w the integrand is y^(-beta) (1-y)^(alpha-2); the second
    factor is expanded in its binomial series, which converges geometrically
    since y <= 1 - c <= 1/2, and each term integrates in closed form.
    """
    y0 = 1.0 - np.asarray(c, dtype=np.float64)
    total = np.zeros_like(y0)
    coeff = 1.0
    ypow = y0 ** (1.0 - beta)
    for m in range(_SERIES_TERMS):
        total += coeff * ypow / (m + 1.0 - beta)
        coeff *= (m + 2.0 - alpha) / (m + 1.0)
        ypow = ypow * y0
    return total


def _tail_lower_panels(a, alpha, beta):
    """integral_min(a,1/2)^(1/2) (1-w)^(-beta) w^(alpha-2) dw (vectorized).

    Geometric panels [a 2^j, a 2^(j+1)] clipped at 1/2 keep the w -> 0
    algebraic singularity a fixed relative distance from every panel, so a
    16-point Gauss rule per panel is accurate to near machine precision.
    """
    a = np.asarray(a, dtype=np.float64)
    total = np.zeros_like(a)
    for j in range(64):
        lo = np.minimum(a * 2.0 ** j, 0.5)
        hi = np.minimum(a * 2.0 ** (j + 1), 0.5)
        width = hi - lo
        if not np.any(width > 0.0):
            break
        w = lo[..., None] + width[..., None] * _GL_X
        vals = np.where(
            width[..., None] > 0.0,
            (1.0 - w) ** (-beta) * w ** (alpha - 2.0),
            0.0,
        )
        total += width * (vals @ _GL_W)
    return total


def tail_integral(a, alpha, beta):
    """integral_a^1 (1-w)^(-beta) w^(alpha-2) dw for a in (0, 1].

    Accepts scalars or arrays; requires beta < 1 and alpha < 1 so both
    endpoint singularities are integrable on the respective pieces.
    """
    a_arr = np.asarray(a, dtype=np.float64)
    if np.any(a_arr <= 0.0) or np.any(a_arr > 1.0):
        raise ValueError("lower limit must lie in (0, 1]")
    c = np.maximum(a_arr, 0.5)
    out = _tail_upper_series(c, alpha, beta) + _tail_lower_panels(a_arr, alpha, beta)
    if np.isscalar(a) or a_arr.ndim == 0:
        return float(out)
    return out


def delta_profile(t, params):
    """The profile t^(beta+1-alpha) * integral_t^1 (1-w)^(-beta) w^(alpha-2) dw.

    Zero at t = 0 and t = 1, continuous in between.  Accepts scalars or
    arrays in [0, 1].
    """
    alpha, beta = params.alpha, params.beta
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0.0) or np.any(t_arr > 1.0):
        raise ValueError("t must lie in [0, 1]")
    interior = (t_arr > 0.0) & (t_arr < 1.0)
    out = np.zeros_like(t_arr)
    if np.any(interior):
        ti = t_arr[interior] if t_arr.ndim else t_arr
        vals = ti ** (beta + 1.0 - alpha) * tail_integral(ti, alpha, beta)
        if t_arr.ndim:
            out[interior] = vals
        else:
            out = np.asarray(vals)
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(out)
    return out


def delta_max(params, scan_points=4096):
    """max over [0, 1] of the delta profile.

    Dense scan plus golden-section refinement around the best sample;
    unimodality is not assumed, only smoothness on (0, 1).  The returned
    value is never below any sampled profile value.
    """
    ts = np.linspace(0.0, 1.0, scan_points + 2)[1:-1]
    vals = delta_profile(ts, params)
    i = int(np.argmax(vals))
    lo = ts[i - 1] if i > 0 else 0.0
    hi = ts[i + 1] if i < ts.size - 1 else 1.0

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = delta_profile(c, params)
    fd = delta_profile(d, params)
    for _ in range(80):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = delta_profile(c, params)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = delta_profile(d, params)
    return max(float(vals[i]), fc, fd)
