"""Pure-numpy implementations of the hot kernels.

Used when numba is unavailable or disabled via TICKNOISE_NO_NUMBA=1.
Same contracts as ticknoise._kernels_numba.
"""

import numpy as np


def ma_convolve(u: np.ndarray, a: np.ndarray) -> np.ndarray:
    """x[k] = sum_j a[j] * u[k + J - j] for k = 0..len(u)-len(a).

    `u` holds len(x) + J innovations (oldest first), `a` the J+1
    moving-average weights with a[0] applied to the newest innovation.
    """
    return np.convolve(u, a, mode="valid")


def lagged_products(x: np.ndarray, max_lag: int) -> np.ndarray:
    """s[m] = sum_k x[k] * x[k+m] for m = 0..max_lag."""
    out = np.empty(max_lag + 1)
    out[0] = np.dot(x, x)
    for m in range(1, max_lag + 1):
        out[m] = np.dot(x[:-m], x[m:])
    return out
