"""Riemann-Liouville and Caputo fractional derivatives plus the fractional
mean value theorem machinery.

The Caputo derivative of a smooth sample is computed from supplied (or
finite-difference) derivative values as J^(1-alpha) f', which avoids
differentiating a quadrature result; the RL derivative keeps the
differentiate-the-integral route for contrast.
"""

import math
from dataclasses import dataclass

import numpy as np

from .fracint import rl_integral_grid
from .funcspace import GridFunction
from .special import gamma, tail_integral

__all__ = [
    "MvtResult",
    "LocateError",
    "finite_difference_samples",
    "caputo_derivative",
    "rl_derivative",
    "fractional_mvt_locate",
    "kernel_difference_identity",
]


class LocateError(RuntimeError):
    """No sign change was bracketed; does not claim the theorem fails."""

    def __init__(self, message, best_xi=None, best_residual=None):
        super().__init__(message)
        self.best_xi = best_xi
        self.best_residual = best_residual


@dataclass
class MvtResult:
    xi: float
    residual: float
    lhs: float
    rhs_at_xi: float


def _difference_matrix_values(nodes, values):
    """Centered finite differences, one-sided at the endpoints."""
    t = nodes
    v = values
    out = np.empty_like(v)
    out[0] = (v[1] - v[0]) / (t[1] - t[0])
    out[-1] = (v[-1] - v[-2]) / (t[-1] - t[-2])
    dt = (t[2:] - t[:-2])[:, None]
    out[1:-1] = (v[2:] - v[:-2]) / dt
    return out


def finite_difference_samples(f):
    """Grid function holding the finite-difference derivative of f."""
    if f.nodes.size < 3:
        raise ValueError("need at least 3 nodes for finite differences")
    return f.with_values(_difference_matrix_values(f.nodes, f.values))


def caputo_derivative(f, alpha, derivative=None):
    """Caputo derivative J^(1-alpha) f' on the nodes of f.

    Supply analytic derivative samples when available; otherwise they are
    approximated by finite differences of f.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"need alpha in (0, 1), got {alpha}")
    if derivative is None:
        derivative = finite_difference_samples(f)
    elif not np.array_equal(derivative.nodes, f.nodes):
        raise ValueError("derivative samples must share the nodes of f")
    return rl_integral_grid(derivative, 1.0 - alpha)


def rl_derivative(f, alpha):
    """RL derivative d/dt J^(1-alpha) f via centered differences."""
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"need alpha in (0, 1), got {alpha}")
    if f.nodes.size < 3:
        raise ValueError("need at least 3 nodes")
    image = rl_integral_grid(f, 1.0 - alpha)
    return f.with_values(_difference_matrix_values(f.nodes, image.values))


def _first_bracket_root(xs, gs, evaluate, iters=64):
    """Leftmost sign-change bisection; returns (x, g(x)) or None."""
    sign = np.sign(gs)
    for i in range(xs.size - 1):
        if gs[i] == 0.0:
            return xs[i], 0.0
        if sign[i] * sign[i + 1] < 0:
            lo, hi = xs[i], xs[i + 1]
            glo = gs[i]
            for _ in range(iters):
                mid = 0.5 * (lo + hi)
                gm = evaluate(mid)
                if gm == 0.0:
                    return mid, 0.0
                if glo * gm < 0:
                    hi = mid
                else:
                    lo, glo = mid, gm
            mid = 0.5 * (lo + hi)
            return mid, evaluate(mid)
    return None


def fractional_mvt_locate(f, alpha, derivative=None):
    """Locate xi in (t0, t1) with

        (f(t1) - f(t0)) / (t1 - t0)^alpha = cD^alpha f(xi) / Gamma(1+alpha).

    Scalar functions only; the Caputo derivative is interpolated linearly
    between nodes and the leftmost sign change of the residual is bisected.
    """
    if f.dim != 1:
        raise ValueError("mean value theorem applies to scalar functions")
    cd = caputo_derivative(f, alpha, derivative)
    vals = f.values[:, 0]
    lhs = (vals[-1] - vals[0]) / (f.t1 - f.t0) ** alpha
    scale = gamma(1.0 + alpha)
    cd_vals = cd.values[:, 0]

    def residual(xi):
        return lhs - np.interp(xi, f.nodes, cd_vals) / scale

    span = np.max(np.abs(vals - vals[0]))
    if span <= 1e-14 * (1.0 + np.max(np.abs(vals))):
        xi = 0.5 * (f.t0 + f.t1)
        return MvtResult(xi, 0.0, lhs, lhs)

    xs = f.nodes[1:-1]
    gs = lhs - np.interp(xs, f.nodes, cd_vals) / scale
    found = _first_bracket_root(xs, gs, residual)
    if found is None:
        i = int(np.argmin(np.abs(gs)))
        raise LocateError(
            "no sign change of the mean-value residual on the grid",
            best_xi=float(xs[i]), best_residual=float(gs[i]))
    xi, res = found
    return MvtResult(float(xi), float(res), float(lhs), float(lhs - res))


def kernel_difference_identity(l, x, alpha, beta, scan_points=4096):
    """Locate xi in (0, l) realizing the kernel-difference identity

        |(l+x)^(a-1) - x^(a-1)|
            = l^b (xi+x)^(a-b-1) c_ab * integral_{x/(xi+x)}^1 (1-w)^(-b) w^(a-2) dw

    with c_ab = (1-alpha) / (Gamma(1+beta) Gamma(1-beta)).  Returns
    (xi, residual at xi).
    """
    if l <= 0.0 or x <= 0.0:
        raise ValueError("need l > 0 and x > 0")
    if not (0.0 < beta < alpha < 1.0):
        raise ValueError("need 0 < beta < alpha < 1")
    lhs = abs((l + x) ** (alpha - 1.0) - x ** (alpha - 1.0))
    c_ab = (1.0 - alpha) / (gamma(1.0 + beta) * gamma(1.0 - beta))

    def rhs(xi):
        xi = np.asarray(xi, dtype=np.float64)
        a = x / (xi + x)
        return (l ** beta * (xi + x) ** (alpha - beta - 1.0) * c_ab
                * tail_integral(a, alpha, beta))

    def g(xi):
        return rhs(xi) - lhs

    xs = np.linspace(0.0, l, scan_points + 2)[1:-1]
    gs = rhs(xs) - lhs
    found = _first_bracket_root(xs, gs, g)
    if found is not None:
        xi, res = found
        return float(xi), float(res)
    i = int(np.argmin(np.abs(gs)))
    if abs(gs[i]) <= 1e-9 * max(lhs, 1e-300):
        return float(xs[i]), float(gs[i])
    raise LocateError("kernel-difference identity: no bracketing sign change",
                      best_xi=float(xs[i]), best_residual=float(gs[i]))
