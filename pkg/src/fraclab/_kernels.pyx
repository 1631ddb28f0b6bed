# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the product-integration weight table.

Same contract and same near/far cell split as fraclab._kernels_py
(closed-form moments next to the evaluation point, Gauss-Legendre
moments elsewhere to avoid catastrophic cancellation); see there for
the derivation.
"""

import numpy as np

from libc.math cimport pow

BACKEND_NAME = "cython"

cdef double[12] _GLX
cdef double[12] _GLWX
cdef double[12] _GLWY

_x, _w = np.polynomial.legendre.leggauss(12)
_x = 0.5 * (_x + 1.0)
_w = 0.5 * _w
cdef Py_ssize_t _j
for _j in range(12):
    _GLX[_j] = _x[_j]
    _GLWX[_j] = _w[_j] * _x[_j]
    _GLWY[_j] = _w[_j] * (1.0 - _x[_j])
del _x, _w


def weight_table(nodes, double alpha):
    t_arr = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef double[::1] t = t_arr
    cdef Py_ssize_t n = t.shape[0]
    w_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] w = w_arr
    cdef Py_ssize_t i, k, j
    cdef double a, b, h, p, q, wl, wr, kv
    cdef double ap1 = alpha + 1.0
    cdef double am1 = alpha - 1.0
    for i in range(1, n):
        for k in range(i):
            a = t[i] - t[k]
            b = t[i] - t[k + 1]
            h = t[k + 1] - t[k]
            if b < h:
                p = (pow(a, ap1) - pow(b, ap1)) / ap1
                q = (pow(a, alpha) - pow(b, alpha)) / alpha
                wl = (p - b * q) / h
                wr = (a * q - p) / h
            else:
                wl = 0.0
                wr = 0.0
                for j in range(12):
                    kv = pow(b + h * _GLX[j], am1)
                    wl += _GLWX[j] * kv
                    wr += _GLWY[j] * kv
                wl *= h
                wr *= h
            w[i, k] += wl
            w[i, k + 1] += wr
    return w_arr
