"""Function representations and the L^p / weak-L^p norm machinery.

Grid functions are sampled on a (possibly graded) partition and interpreted
through their piecewise-linear magnitude: the pointwise vector norm is taken
at the nodes and interpolated linearly in between.  That convention makes
the L^p norm, the distribution function and the weak-L^p quasi-norm exact
for the interpolant and mutually consistent.

Closed-form functions cover the power-log family

    c * (t - t0)^(-beta) * (ln(kappa / (t - t0)))^(-gamma) * x

restricted to a support subinterval; their L^p norms are integrated
exactly where a closed form exists and signal divergence with +inf.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .reports import BoundReport

__all__ = [
    "GridFunction",
    "ClosedFormFunction",
    "ExponentTriple",
    "graded_nodes",
    "recommended_grading",
    "grid_from_callable",
    "random_piecewise_linear",
    "lp_norm",
    "distribution_function",
    "weak_lp_quasinorm",
    "embedding_check",
    "read_grid_csv",
    "write_grid_csv",
]

INF = math.inf

_VECTOR_NORMS = {
    "euclidean": lambda v: np.sqrt(np.sum(v * v, axis=-1)),
    "max": lambda v: np.max(np.abs(v), axis=-1),
    "sum": lambda v: np.sum(np.abs(v), axis=-1),
}


@dataclass
class GridFunction:
    """Sampled function on a strictly increasing partition, values in R^d."""

    nodes: np.ndarray
    values: np.ndarray
    vector_norm: str = "euclidean"

    def __post_init__(self):
        self.nodes = np.ascontiguousarray(self.nodes, dtype=np.float64)
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.values.ndim == 1:
            self.values = self.values[:, None]
        if self.nodes.ndim != 1 or self.nodes.size < 2:
            raise ValueError("need at least two nodes")
        if not np.all(np.diff(self.nodes) > 0.0):
            raise ValueError("nodes must be strictly increasing")
        if self.values.shape[0] != self.nodes.size:
            raise ValueError("one value row per node required")
        if not np.all(np.isfinite(self.nodes)) or not np.all(np.isfinite(self.values)):
            raise ValueError("nodes and values must be finite")
        if self.vector_norm not in _VECTOR_NORMS:
            raise ValueError(f"unknown vector norm {self.vector_norm!r}")

    @property
    def t0(self):
        return float(self.nodes[0])

    @property
    def t1(self):
        return float(self.nodes[-1])

    @property
    def dim(self):
        return self.values.shape[1]

    def magnitudes(self):
        """||f(t_i)||_X at every node."""
        return _VECTOR_NORMS[self.vector_norm](self.values)

    def interp(self, t):
        """Linear interpolation of the stored values (componentwise)."""
        t = np.asarray(t, dtype=np.float64)
        out = np.empty(t.shape + (self.dim,))
        for j in range(self.dim):
            out[..., j] = np.interp(t, self.nodes, self.values[:, j])
        return out

    def with_values(self, values):
        return GridFunction(self.nodes, values, self.vector_norm)


@dataclass
class ClosedFormFunction:
    """Member of the power-log family on a support subinterval.

    Equals c (t-t0)^(-beta) (ln(kappa/(t-t0)))^(-gamma) x on [a, b] (b may
    be inf) and 0 outside.  gamma = 0 gives the pure power family with
    exact images under the fractional integral.
    """

    t0: float
    support: tuple
    c: float = 1.0
    beta: float = 0.0
    log_exp: float = 0.0
    log_scale: float = 1.0
    x: np.ndarray = field(default_factory=lambda: np.array([1.0]))
    vector_norm: str = "euclidean"

    def __post_init__(self):
        a, b = self.support
        self.x = np.atleast_1d(np.asarray(self.x, dtype=np.float64))
        if a < self.t0 or b <= a:
            raise ValueError("support must be a nonempty subinterval of [t0, inf)")
        if self.log_exp < 0.0:
            raise ValueError("logarithmic exponent must be >= 0")
        if self.log_exp > 0.0:
            if not math.isfinite(b):
                raise ValueError("log factor requires a finite support end")
            if self.log_scale <= b - self.t0:
                raise ValueError("log_scale must exceed the support width "
                                 "so the logarithm stays positive")
        nx = float(_VECTOR_NORMS[self.vector_norm](self.x))
        if not math.isclose(nx, 1.0, rel_tol=1e-12):
            raise ValueError("direction vector must have unit norm")

    @property
    def dim(self):
        return self.x.size

    def magnitude(self, t):
        """|c| (t-t0)^(-beta) (ln(kappa/(t-t0)))^(-gamma) inside the support."""
        t = np.asarray(t, dtype=np.float64)
        a, b = self.support
        s = t - self.t0
        inside = (t >= a) & (t <= b) & (s > 0.0)
        out = np.zeros_like(t, dtype=np.float64)
        s_in = np.where(inside, s, 1.0)
        m = abs(self.c) * s_in ** (-self.beta)
        if self.log_exp > 0.0:
            m = m * np.log(self.log_scale / s_in) ** (-self.log_exp)
        out = np.where(inside, m, 0.0)
        return out if out.ndim else float(out)

    def evaluate(self, t):
        t = np.asarray(t, dtype=np.float64)
        sign = 1.0 if self.c >= 0 else -1.0
        return sign * self.magnitude(t)[..., None] * self.x


@dataclass(frozen=True)
class ExponentTriple:
    """(p, alpha, q) with its regime against the critical exponent p/(1-p*alpha)."""

    p: float
    alpha: float
    q: float

    def __post_init__(self):
        if self.p < 1.0 or self.q < 1.0 or self.alpha <= 0.0:
            raise ValueError("need p >= 1, q >= 1 and alpha > 0")

    @property
    def critical_q(self):
        if self.p * self.alpha < 1.0:
            return self.p / (1.0 - self.p * self.alpha)
        return INF

    def regime(self):
        qc = self.critical_q
        if math.isinf(qc):
            # beyond alpha = 1/p the operator maps into itself; only
            # q <= p is covered by the boundedness statements used here
            return "subcritical" if self.q <= self.p else "supercritical"
        if math.isinf(self.q):
            return "supercritical"
        if math.isclose(self.q, qc, rel_tol=1e-12):
            return "critical"
        return "subcritical" if self.q < qc else "supercritical"

    def to_dict(self):
        return {"p": self.p, "alpha": self.alpha,
                "q": None if math.isinf(self.q) else self.q,
                "regime": self.regime()}


def graded_nodes(t0, t1, n, grading=1.0, exclude_start=False):
    """Partition t0 + (t1-t0) (i/n)^g, i = 0..n (i = 1..n when the start
    node is excluded, for data singular at t0)."""
    if n < 2 or grading < 1.0 or t1 <= t0:
        raise ValueError("need n >= 2, grading >= 1 and t1 > t0")
    i0 = 1 if exclude_start else 0
    u = np.arange(i0, n + 1, dtype=np.float64) / n
    return t0 + (t1 - t0) * u ** grading


def recommended_grading(beta, cap=8.0):
    """Grading exponent for data with a (t-t0)^(-beta) singularity."""
    if beta <= 0.0:
        return 1.0
    return float(min(cap, max(2.0, 2.0 / max(1.0 - beta, 1.0 / cap))))


def grid_from_callable(fn, nodes, vector_norm="euclidean"):
    vals = np.asarray([np.atleast_1d(fn(float(t))) for t in nodes], dtype=np.float64)
    return GridFunction(np.asarray(nodes, dtype=np.float64), vals, vector_norm)


def random_piecewise_linear(seed, n=257, interval=(0.0, 1.0), d=1,
                            vector_norm="euclidean", scale=1.0, knots=None):
    """Seeded random grid function on a uniform mesh (sweep test data).

    By default every node gets an independent value (rough data, the harder
    stress for inequality sweeps).  With ``knots`` the random values are
    drawn on that many equispaced knots and interpolated onto the mesh,
    giving a Lipschitz family whose translation modulus actually decays.
    """
    rng = np.random.default_rng(seed)
    nodes = np.linspace(interval[0], interval[1], n)
    if knots is None:
        values = scale * rng.uniform(-1.0, 1.0, size=(n, d))
    else:
        if not 2 <= knots <= n:
            raise ValueError(f"need 2 <= knots <= n, got {knots}")
        kt = np.linspace(interval[0], interval[1], knots)
        kv = scale * rng.uniform(-1.0, 1.0, size=(knots, d))
        values = np.column_stack([np.interp(nodes, kt, kv[:, j])
                                  for j in range(d)])
    return GridFunction(nodes, values, vector_norm)


# ---------------------------------------------------------------------------
# L^p norms


def _restrict_magnitudes(f, a, b):
    """Node positions and magnitudes of f on [a, b], endpoints interpolated."""
    if not (f.t0 <= a < b <= f.t1):
        raise ValueError(f"interval [{a}, {b}] not inside [{f.t0}, {f.t1}]")
    m = f.magnitudes()
    inner = (f.nodes > a) & (f.nodes < b)
    ts = np.concatenate(([a], f.nodes[inner], [b]))
    ms = np.concatenate(([np.interp(a, f.nodes, m)], m[inner],
                         [np.interp(b, f.nodes, m)]))
    return ts, ms


def _cell_power_integrals(ts, ms, p):
    """integral m(t)^p per cell, exact for the piecewise-linear magnitude."""
    h = np.diff(ts)
    m0, m1 = ms[:-1], ms[1:]
    flat = np.abs(m1 - m0) <= 1e-13 * np.maximum(m0, m1)
    mid = 0.5 * (m0 + m1)
    denom = np.where(flat, 1.0, m1 - m0)
    exact = (m1 ** (p + 1.0) - m0 ** (p + 1.0)) / ((p + 1.0) * denom)
    return h * np.where(flat, mid ** p, exact)


def _power_log_norm_p(f, p, a, b):
    """||f||_{L^p([a,b])}^p for a closed-form member, exact where possible."""
    t0 = f.t0
    lo = max(a, f.support[0])
    hi = min(b, f.support[1])
    if hi <= lo:
        return 0.0
    cp = abs(f.c) ** p
    bp = f.beta * p
    gp = f.log_exp * p
    slo, shi = lo - t0, hi - t0
    if gp == 0.0:
        if slo <= 0.0 and bp >= 1.0:
            return INF
        if math.isinf(shi):
            if bp <= 1.0:
                return INF
            return cp * slo ** (1.0 - bp) / (bp - 1.0)
        if abs(bp - 1.0) < 1e-12:
            if slo <= 0.0:
                return INF
            return cp * math.log(shi / slo)
        e = 1.0 - bp
        lo_term = 0.0 if slo <= 0.0 else slo ** e
        return cp * (shi ** e - lo_term) / e
    kappa = f.log_scale
    if abs(bp - 1.0) < 1e-12:
        # u = ln(kappa / (t - t0)) turns the integrand into u^(-gp)
        u_hi = math.log(kappa / shi)
        if slo <= 0.0:
            if gp <= 1.0:
                return INF
            return cp * u_hi ** (1.0 - gp) / (gp - 1.0)
        u_lo = math.log(kappa / slo)
        if abs(gp - 1.0) < 1e-12:
            return cp * math.log(u_lo / u_hi)
        e = 1.0 - gp
        return cp * (u_lo ** e - u_hi ** e) / e
    if slo <= 0.0:
        if bp > 1.0:
            return INF
        val, _ = integrate.quad(
            lambda s: 0.0 if s <= 0.0 else math.log(kappa / s) ** (-gp),
            0.0, shi, weight="alg", wvar=(-bp, 0.0), limit=200)
        return cp * val
    val, _ = integrate.quad(
        lambda s: s ** (-bp) * math.log(kappa / s) ** (-gp),
        slo, shi, limit=200)
    return cp * val


def _power_log_sup(f, a, b):
    lo = max(a, f.support[0])
    hi = min(b, f.support[1])
    if hi <= lo:
        return 0.0
    slo, shi = lo - f.t0, hi - f.t0
    if f.beta > 0.0 and slo <= 0.0:
        return INF
    if f.beta < 0.0 and math.isinf(shi):
        return INF
    cands = []
    if slo > 0.0:
        cands.append(lo)
    if math.isfinite(shi):
        cands.append(hi)
    if f.log_exp > 0.0 and f.beta > 0.0:
        s_star = f.log_scale * math.exp(-f.log_exp / f.beta)
        if slo < s_star < shi:
            cands.append(f.t0 + s_star)
    if f.beta == 0.0 and f.log_exp == 0.0:
        return abs(f.c)
    return float(max(f.magnitude(np.asarray(cands)).max(), 0.0)) if cands else INF


def lp_norm(f, p, interval=None):
    """L^p norm of ||f(t)||_X over the interval (default: full domain).

    Exact for the piecewise-linear magnitude of grid functions and for the
    closed-form power/log families where an antiderivative exists; returns
    +inf when the defining integral diverges.
    """
    if p != INF and p < 1.0:
        raise ValueError(f"need p >= 1 or p = inf, got {p}")
    if isinstance(f, ClosedFormFunction):
        if interval is None:
            interval = (f.t0, f.support[1])
        a, b = interval
        if b <= a:
            raise ValueError("empty interval")
        if p == INF:
            return _power_log_sup(f, a, b)
        val = _power_log_norm_p(f, p, a, b)
        return INF if math.isinf(val) else val ** (1.0 / p)
    if interval is None:
        interval = (f.t0, f.t1)
    a, b = interval
    if b <= a:
        raise ValueError("empty interval")
    ts, ms = _restrict_magnitudes(f, a, b)
    if p == INF:
        return float(ms.max())
    return float(np.sum(_cell_power_integrals(ts, ms, p)) ** (1.0 / p))


# ---------------------------------------------------------------------------
# Distribution function and weak-L^p


def _level_measure(ts, ms, r, strict=True):
    """Length of {t : m(t) > r} (or >= r) for the piecewise-linear m."""
    h = np.diff(ts)
    lo = np.minimum(ms[:-1], ms[1:])
    hi = np.maximum(ms[:-1], ms[1:])
    r = np.asarray(r, dtype=np.float64)[..., None]
    if strict:
        full = lo > r
        partial = (lo <= r) & (hi > r)
    else:
        full = lo >= r
        partial = (lo < r) & (hi >= r)
    frac = np.zeros(np.broadcast_shapes(r.shape, lo.shape))
    span = np.where(hi > lo, hi - lo, 1.0)
    frac = np.where(partial, (hi - r) / span, 0.0)
    out = np.sum(h * (full + frac), axis=-1)
    return out


def distribution_function(f, r):
    """Lebesgue measure of {t : ||f(t)||_X > r} for the interpolant."""
    r_arr = np.asarray(r, dtype=np.float64)
    if np.any(r_arr <= 0.0):
        raise ValueError("level r must be positive")
    out = _level_measure(f.nodes, f.magnitudes(), r_arr, strict=True)
    return float(out) if np.isscalar(r) or r_arr.ndim == 0 else out


def weak_lp_quasinorm(f, p):
    """sup over r > 0 of r * lambda_f(r)^(1/p) for the interpolant.

    The measure is piecewise linear in r between node magnitudes, so the
    supremum is attained either at a magnitude level (as a left limit,
    evaluated with the closed >= level set) or at the analytic interior
    maximizer of r (A - B r)^(1/p) within a band; both candidate kinds are
    enumerated exactly.
    """
    if p < 1.0:
        raise ValueError(f"need p >= 1, got {p}")
    ts = f.nodes
    ms = f.magnitudes()
    levels = np.unique(ms[ms > 0.0])
    if levels.size == 0:
        return 0.0
    bands = np.concatenate(([0.0], levels))
    cands = [levels]
    for lo, hi in zip(bands[:-1], bands[1:]):
        r1 = lo + (hi - lo) / 3.0
        r2 = lo + 2.0 * (hi - lo) / 3.0
        if r1 <= 0.0:
            r1 = hi / 2.0
        if not r1 < r2:   # band too thin for a finite-difference slope
            continue
        lam1, lam2 = _level_measure(ts, ms, np.array([r1, r2]), strict=True)
        bslope = (lam1 - lam2) / (r2 - r1)
        if bslope > 1e-15:
            a_coef = lam1 + bslope * r1
            r_star = p * a_coef / ((p + 1.0) * bslope)
            cands.append(np.clip([r_star], max(lo, 1e-300), hi))
        cands.append([0.5 * (lo + hi)] if lo > 0.0 else [hi / 2.0])
    rs = np.unique(np.concatenate([np.atleast_1d(np.asarray(c, dtype=np.float64))
                                   for c in cands]))
    rs = rs[rs > 0.0]
    best = 0.0
    for block in np.array_split(rs, max(1, rs.size // 512)):
        lam = _level_measure(ts, ms, block, strict=False)
        best = max(best, float(np.max(block * lam ** (1.0 / p))))
    return best


def embedding_check(f, p, q, interval=None, rtol=1e-9):
    """The three L^p / weak-L^p embedding inequalities for 1 <= p < q.

    Returns BoundReports for (a) ||f||_p vs the weak-q quasinorm,
    (b) the weak-p quasinorm vs ||f||_q, and (c) weak-p vs weak-q.
    """
    if not (1.0 <= p < q):
        raise ValueError("need 1 <= p < q")
    if interval is None:
        interval = (f.t0, f.t1)
    a, b = interval
    length = b - a
    ctx = {"p": p, "q": q, "interval": [a, b]}
    strong_p = lp_norm(f, p, interval)
    weak_p = weak_lp_quasinorm(f, p)
    if math.isinf(q):
        sup = lp_norm(f, INF, interval)
        factor = length ** (1.0 / p)
        rep_a = BoundReport.check("embedding_a", strong_p, factor * sup, factor,
                                  ctx, rtol=rtol)
        rep_b = BoundReport.check("embedding_b", weak_p, factor * sup, factor,
                                  ctx, rtol=rtol)
        rep_c = BoundReport.check("embedding_c", weak_p, factor * sup, factor,
                                  ctx, rtol=rtol)
        return rep_a, rep_b, rep_c
    strong_q = lp_norm(f, q, interval)
    weak_q = weak_lp_quasinorm(f, q)
    grow = length ** ((q - p) / (p * q))
    c_a = (q / (q - p)) ** (1.0 / p) * grow
    rep_a = BoundReport.check("embedding_a", strong_p, c_a * weak_q, c_a,
                              ctx, rtol=rtol)
    rep_b = BoundReport.check("embedding_b", weak_p, grow * strong_q, grow,
                              ctx, rtol=rtol)
    rep_c = BoundReport.check("embedding_c", weak_p, c_a * weak_q, c_a,
                              ctx, rtol=rtol)
    return rep_a, rep_b, rep_c


# ---------------------------------------------------------------------------
# CSV interface


def write_grid_csv(f, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"v{j + 1}" for j in range(f.dim)])
        for t, row in zip(f.nodes, f.values):
            writer.writerow([f"{t:.17g}"] + [f"{v:.17g}" for v in row])


def read_grid_csv(path, vector_norm="euclidean"):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "t":
            raise ValueError(f"{path}: expected header starting with 't'")
        rows = [[float(x) for x in row] for row in reader if row]
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least two rows")
    data = np.asarray(rows)
    nodes = data[:, 0]
    if not np.all(np.diff(nodes) > 0.0):
        raise ValueError(f"{path}: node column must be strictly increasing")
    return GridFunction(nodes, data[:, 1:], vector_norm)
