"""Numba-compiled hot kernels.

Loop forms of the kernels in ticknoise._kernels_numpy.  Each output element
is an independent accumulation over a contiguous forward range, compiled
once with a fixed reduction order, so results are identical for any thread
count and across runs.  fastmath is enabled per element to let the inner
reductions vectorize; the numpy fallback sums in a different order anyway,
and the two backends are only required to agree to ~1e-12 relative.
"""

import numpy as np
from numba import njit, prange


@njit(parallel=True, fastmath=True, cache=True)
def _convolve_reversed(u, ar):
    m = ar.shape[0]
    n = u.shape[0] - m + 1
    out = np.empty(n)
    for k in prange(n):
        acc = 0.0
        for j in range(m):
            acc += ar[j] * u[k + j]
        out[k] = acc
    return out


def ma_convolve(u, a):
    """x[k] = sum_j a[j] * u[k + J - j]; a[0] weighs the newest innovation."""
    return _convolve_reversed(u, a[::-1].copy())


@njit(parallel=True, fastmath=True, cache=True)
def lagged_products(x, max_lag):
    n = x.shape[0]
    out = np.empty(max_lag + 1)
    for m in prange(max_lag + 1):
        acc = 0.0
        for k in range(n - m):
            acc += x[k] * x[k + m]
        out[m] = acc
    return out
