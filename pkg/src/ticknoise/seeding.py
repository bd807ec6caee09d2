"""Deterministic seed derivation.

Every sampler in the package owns its generator state and is seeded with a
plain integer.  When one simulation needs several mutually independent
streams (Gaussian factor, signs, amplitudes, durations, delay), child seeds
are derived with the rule

    child(seed, k) = SeedSequence(entropy=seed, spawn_key=(k,)) -> first u64

which is stable across processes and numpy versions.  The stream indices
below are part of the package contract: re-running with the same master seed
reproduces every stream bit for bit.
"""

import numpy as np

STREAM_GAUSSIAN = 0
STREAM_SIGN = 1
STREAM_AMPLITUDE = 2
STREAM_DURATION = 3
STREAM_DELAY = 4


def child_seed(seed: int, index: int) -> int:
    """Derive the integer seed for child stream `index` of `seed`."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def rng_for(seed: int, index: int) -> np.random.Generator:
    """Generator for child stream `index` of master `seed`."""
    return np.random.default_rng(child_seed(seed, index))
