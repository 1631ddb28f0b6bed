"""Compactness diagnostics for image families of the fractional integral.

The translation modulus of the image family is compared against an explicit
two-part decay envelope (a kernel-difference part scaling like h^beta and a
fresh-strip part obtained by interpolation), and the failure of compactness
at the critical exponent is exhibited by a uniformly separated sequence.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import RegimeError, strong_type_constant
from .fracint import rl_integral_grid
from .funcspace import ExponentTriple, GridFunction, lp_norm
from .special import DeltaProfileParams, delta_max, gamma

__all__ = [
    "FamilySpec",
    "ModulusReport",
    "translation_modulus",
    "simon_diagnostic",
    "noncompact_sequence",
    "noncompact_gap",
]


@dataclass
class FamilySpec:
    """A bounded family of grid functions on one common grid."""

    members: list
    p: float
    seeds: list = field(default_factory=list)

    def __post_init__(self):
        if not self.members:
            raise ValueError("family must be nonempty")
        nodes = self.members[0].nodes
        for m in self.members[1:]:
            if not np.array_equal(m.nodes, nodes):
                raise ValueError("all family members must share one grid")

    @property
    def nodes(self):
        return self.members[0].nodes

    @property
    def family_norm(self):
        return max(lp_norm(m, self.p) for m in self.members)


@dataclass
class ModulusReport:
    """Translation-modulus sweep of an image family with its decay envelope.

    i_h and j_h are the two raw components of the proof-split bound; the
    modulus itself is bounded by (i_h + j_h)/Gamma(alpha), which implies
    the looser i_h + j_h check as well since Gamma(alpha) > 1 on (0, 1).
    """

    h_values: list
    omega: list
    i_h: list
    j_h: list
    beta_split: float
    k: float
    theta: float
    decay_verdict: bool
    seeds: list = field(default_factory=list)

    def to_dict(self):
        return {
            "h_values": self.h_values,
            "omega": self.omega,
            "i_h": self.i_h,
            "j_h": self.j_h,
            "beta_split": self.beta_split,
            "k": self.k,
            "theta": self.theta,
            "decay_verdict": self.decay_verdict,
            "seeds": self.seeds,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)


def _shift_difference_norm(f, q, h):
    """L^q norm of t -> f(t+h) - f(t) on [t0, t1-h] for one grid function.

    Breakpoints of the difference of interpolants sit at the original nodes
    and at nodes shifted left by h; the zero crossings of each component are
    inserted as well so that the nodal-magnitude interpolant of the
    difference is exact in the scalar case.
    """
    hi = f.t1 - h
    ts = np.unique(np.concatenate((f.nodes, f.nodes - h)))
    ts = ts[(ts >= f.t0) & (ts <= hi)]
    if ts[0] > f.t0:
        ts = np.concatenate(([f.t0], ts))
    if ts[-1] < hi:
        ts = np.concatenate((ts, [hi]))
    diff = f.interp(ts + h) - f.interp(ts)
    crossings = []
    for col in diff.T:
        sign_change = col[:-1] * col[1:] < 0.0
        if np.any(sign_change):
            a, b = col[:-1][sign_change], col[1:][sign_change]
            left, right = ts[:-1][sign_change], ts[1:][sign_change]
            crossings.append(left + (right - left) * a / (a - b))
    if crossings:
        ts = np.unique(np.concatenate([ts] + crossings))
        diff = f.interp(ts + h) - f.interp(ts)
    g = GridFunction(ts, diff, f.vector_norm)
    return lp_norm(g, q)


def translation_modulus(family, q, h):
    """sup over the family of the shifted-difference L^q norm at step h."""
    nodes = family.nodes
    span = nodes[-1] - nodes[0]
    if not 0.0 < h < span / 2.0:
        raise ValueError(f"need 0 < h < (t1-t0)/2 = {span / 2.0}, got {h}")
    return max(_shift_difference_norm(m, q, h) for m in family.members)


def default_split_k(p, alpha):
    """Midpoint of the admissible interval (1, min(p, 1/(1-alpha)))."""
    return 0.5 * (1.0 + min(p, 1.0 / (1.0 - alpha)))


def simon_diagnostic(family, alpha, q, h_schedule, k=None,
                     decay_factor=10.0, rtol=1e-6):
    """Translation-modulus decay check for the image family {J^alpha f}.

    For each h the modulus omega(h) is measured and the two-part bound is
    evaluated: i_h = h^beta c_(a,b) M_(a,b) C_(a-b,p) ||F|| with
    beta = alpha - (q-p)/(qp), and j_h the interpolated fresh-strip bound
    with parameters k and theta = (p/q)(q-k)/(p - k(1-p*alpha)).  The
    verdict requires a factor-``decay_factor`` drop across the sweep and
    omega <= (i_h + j_h)/Gamma(alpha) throughout.
    """
    p = family.p
    triple = ExponentTriple(p, alpha, q)
    if triple.regime() != "subcritical":
        raise RegimeError(
            f"modulus bound needs subcritical q < {triple.critical_q}, got {q}")
    if not p < q:
        raise RegimeError(f"split exponent needs p < q, got p={p}, q={q}")
    hs = np.asarray(h_schedule, dtype=np.float64)
    span = family.nodes[-1] - family.nodes[0]
    if hs.size < 2 or np.any(np.diff(hs) >= 0.0):
        raise ValueError("h_schedule must be >= 2 strictly decreasing values")
    if not (0.0 < hs[-1] and hs[0] < span / 2.0):
        raise ValueError("h_schedule must lie inside (0, (t1-t0)/2)")

    beta = alpha - (q - p) / (q * p)
    if not 0.0 < beta < alpha:
        raise RegimeError(f"split exponent beta={beta} left (0, alpha)")
    if k is None:
        k = default_split_k(p, alpha)
    if not 1.0 < k < min(p, 1.0 / (1.0 - alpha)):
        raise ValueError(f"need k in (1, {min(p, 1.0 / (1.0 - alpha))}), got {k}")
    theta = (p / q) * (q - k) / (p - k * (1.0 - p * alpha))
    if not 0.0 < theta < 1.0:
        raise RegimeError(f"interpolation weight theta={theta} left (0, 1)")

    norm = family.family_norm
    c_ab = (1.0 - alpha) / (gamma(1.0 + beta) * gamma(1.0 - beta))
    m_ab = delta_max(DeltaProfileParams(alpha, beta))
    c_strong_split, _ = strong_type_constant(alpha - beta, p)
    k_abp = c_ab * m_ab * c_strong_split
    c_strong, _ = strong_type_constant(alpha, p)
    j_exp = (alpha - 1.0) + 1.0 / k
    j_fixed = (span ** (1.0 - 1.0 / p) / (k * (alpha - 1.0) + 1.0) ** (1.0 / k))
    j_strong = (gamma(alpha) * c_strong) ** theta

    images = FamilySpec([rl_integral_grid(m, alpha) for m in family.members],
                        p, family.seeds)
    omega, i_hs, j_hs = [], [], []
    ok = True
    for h in hs:
        w = translation_modulus(images, q, float(h))
        i_h = float(h) ** beta * k_abp * norm
        j_h = (float(h) ** j_exp * j_fixed) ** (1.0 - theta) * j_strong * norm
        envelope = (i_h + j_h) / gamma(alpha)
        if w > envelope * (1.0 + rtol):
            ok = False
        omega.append(w)
        i_hs.append(i_h)
        j_hs.append(j_h)
    if not omega[-1] < omega[0] / decay_factor:
        ok = False
    return ModulusReport([float(h) for h in hs], omega, i_hs, j_hs,
                         float(beta), float(k), float(theta), ok,
                         list(family.seeds))


def _jump_mesh(t0, t1, breakpoints, n_side=240, tiny=1e-9):
    """Mesh with two-sided geometric clustering at each breakpoint."""
    span = t1 - t0
    pieces = [np.linspace(t0, t1, 257)]
    ratios = (np.arange(1, n_side + 1, dtype=np.float64) / n_side) ** 6
    for bp in breakpoints:
        if not t0 < bp < t1:
            continue
        left = bp - (bp - t0) * np.maximum(ratios, tiny * span / (bp - t0))
        right = bp + (t1 - bp) * np.maximum(ratios, tiny * span / (t1 - bp))
        pieces.extend((left, right, np.array([bp])))
    mesh = np.unique(np.concatenate(pieces))
    return mesh[(mesh >= t0) & (mesh <= t1)]


def noncompact_sequence(j, p, interval=(0.0, 1.0), v=None, mesh=None):
    """f_j = j^(1/p) v on [t0, t0 + (t1-t0)/j] and 0 after.

    Every member has the same L^p norm (t1-t0)^(1/p); the jump is stored
    as a one-cell drop on a mesh refined near the breakpoint.
    """
    j = int(j)
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    t0, t1 = interval
    if t1 <= t0:
        raise ValueError("need t1 > t0")
    if v is None:
        v = np.array([1.0])
    v = np.atleast_1d(np.asarray(v, dtype=np.float64))
    bp = t0 + (t1 - t0) / j
    if mesh is None:
        mesh = _jump_mesh(t0, t1, [bp] if j > 1 else [])
    values = np.where((mesh <= bp)[:, None], j ** (1.0 / p) * v, 0.0)
    return GridFunction(mesh, values)


def noncompact_gap(n, m, alpha, p, interval=(0.0, 1.0)):
    """Critical-norm separation of the sequence at indices n > m.

    Returns (bound, measured) with
        bound = [1 - (m/n)^(1/p)] (t1-t0)^(1/p) / Gamma(alpha+1)
    and measured = the L^(p/(1-p*alpha)) norm of J^alpha f_n - J^alpha f_m
    on a mesh clustered at both breakpoints.
    """
    n, m = int(n), int(m)
    if not n > m >= 1:
        raise ValueError(f"need n > m >= 1, got n={n}, m={m}")
    if not 0.0 < alpha < 1.0 / p:
        raise ValueError(f"need 0 < alpha < 1/p, got alpha={alpha}")
    t0, t1 = interval
    span = t1 - t0
    bound = (1.0 - (m / n) ** (1.0 / p)) * span ** (1.0 / p) / gamma(alpha + 1.0)
    bps = [t0 + span / n, t0 + span / m]
    mesh = _jump_mesh(t0, t1, [bp for bp in bps if bp < t1])
    f_n = noncompact_sequence(n, p, interval, mesh=mesh)
    f_m = noncompact_sequence(m, p, interval, mesh=mesh)
    diff = rl_integral_grid(f_n, alpha).values - rl_integral_grid(f_m, alpha).values
    g = GridFunction(mesh, diff)
    q = p / (1.0 - p * alpha)
    return bound, lp_norm(g, q)
