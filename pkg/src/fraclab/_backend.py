"""Kernel backend selection.

The compiled extension is preferred; the pure-numpy module is the
fallback when the extension was not built.  Both expose the same
``weight_table(nodes, alpha)`` contract and must agree to 1e-10
(see tests/test_kernels.py and benchmarks/bench_kernels.py).
"""

try:
    from . import _kernels as kernels
except ImportError:  # extension not built
    from . import _kernels_py as kernels

weight_table = kernels.weight_table
BACKEND_NAME = kernels.BACKEND_NAME
