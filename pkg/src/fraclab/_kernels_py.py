"""Pure-numpy backend for the product-integration weight table.

The hot kernel of the package: for nodes t_0 < ... < t_{N-1} and order
alpha > 0 it builds the lower-triangular table W with

    sum_k W[n, k] * f(t_k)  =  integral_{t_0}^{t_n} (t_n - s)^(alpha-1) L(s) ds

exact for every piecewise-linear L on the node set.  The 1/Gamma(alpha)
factor is applied by the caller.

Cell weights are kernel moments against the two hat functions.  With
a = t_n - t_k, b = t_n - t_(k+1), h = a - b the closed forms

    left  = (P - b*Q)/h,   right = (a*Q - P)/h,
    P = (a^(alpha+1) - b^(alpha+1))/(alpha+1),  Q = (a^alpha - b^alpha)/alpha

cancel catastrophically once h << b (the difference is O(h^2) while each
term is O(h)), so they are only used for cells adjacent to the evaluation
point (b < h); everywhere else the kernel is smooth on the cell and the
moments are computed by 12-point Gauss-Legendre quadrature, which is
cancellation-free and accurate to ~1e-18 relative for b >= h.
"""

import numpy as np

BACKEND_NAME = "python"

_GL_X, _GL_W = np.polynomial.legendre.leggauss(12)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W
_GL_WX = _GL_W * _GL_X
_GL_WY = _GL_W * (1.0 - _GL_X)


def weight_table(nodes, alpha):
    """Return the (N, N) product-integration weight table.

    Row n only touches columns k <= n (causality); row 0 is zero.
    """
    t = np.asarray(nodes, dtype=np.float64)
    n = t.size
    w = np.zeros((n, n))
    ap1 = alpha + 1.0
    am1 = alpha - 1.0
    h_all = np.diff(t)
    for i in range(1, n):
        a = t[i] - t[:i]          # distances to left cell edges
        b = t[i] - t[1:i + 1]     # distances to right cell edges
        h = h_all[:i]
        wl = np.empty(i)
        wr = np.empty(i)
        near = b < h
        if near.any():
            an, bn, hn = a[near], b[near], h[near]
            p = (an ** ap1 - bn ** ap1) / ap1
            q = (an ** alpha - bn ** alpha) / alpha
            wl[near] = (p - bn * q) / hn
            wr[near] = (an * q - p) / hn
        far = ~near
        if far.any():
            s = b[far, None] + h[far, None] * _GL_X
            kernel = s ** am1
            wl[far] = h[far] * (kernel @ _GL_WX)
            wr[far] = h[far] * (kernel @ _GL_WY)
        w[i, :i] += wl
        w[i, 1:i + 1] += wr
    return w
