"""Kernel backend selection.

The hot inner loops (moving-average convolution, lagged autocovariance sums)
have two implementations: numba @njit loops and pure-numpy fallbacks.  The
numba path is chosen when numba imports cleanly, unless the environment
variable TICKNOISE_NO_NUMBA is set to 1/true/yes.

`benchmarks/bench_kernels.py` times the two paths against each other.
"""

import os

_flag = os.environ.get("TICKNOISE_NO_NUMBA", "").strip().lower()
NUMBA_DISABLED = _flag in {"1", "true", "yes"}

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not NUMBA_DISABLED

if USE_NUMBA:
    from ._kernels_numba import lagged_products, ma_convolve
else:
    from ._kernels_numpy import lagged_products, ma_convolve

__all__ = ["HAS_NUMBA", "NUMBA_DISABLED", "USE_NUMBA", "ma_convolve", "lagged_products", "set_threads"]


def set_threads(n: int) -> None:
    """Limit numba's thread pool; no-op on the numpy backend."""
    if USE_NUMBA and n > 0:
        numba.set_num_threads(n)
