"""Counter-based random streams keyed by (master_seed, trial_index, stream)."""

import numpy as np

DIRECT = 0
REFLECT = 1
DECOMPOSED = 2


def trial_rng(master_seed, trial_index, stream):
    """Return an independent generator for one trial and one draw stream."""
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(trial_index), int(stream)))
    return np.random.Generator(np.random.Philox(seq))


def complex_normal(rng, size):
    """CN(0, 1) draws: unit total variance, 1/2 per real component."""
    scale = np.sqrt(0.5)
    return scale * rng.standard_normal(size) + 1j * scale * rng.standard_normal(size)
