"""Deterministic random streams.

Every run owns three independent generators derived from its 64-bit seed by
fixed additive offsets. New consumers of randomness get a new offset, so
adding one never shifts an existing stream.

=========  ======  ==============================================
stream     offset  used for
=========  ======  ==============================================
init       0       initial livepoints drawn from the prior
chain      1       chain start selection and every MH step
resample   2       systematic resampling of posterior samples
=========  ======  ==============================================
"""

from typing import NamedTuple

import numpy as np

SEED_OFFSETS = {"init": 0, "chain": 1, "resample": 2}

_MASK64 = (1 << 64) - 1


class Streams(NamedTuple):
    init: np.random.Generator
    chain: np.random.Generator
    resample: np.random.Generator


def substream(seed, name):
    return np.random.default_rng((int(seed) + SEED_OFFSETS[name]) & _MASK64)


def make_streams(seed):
    return Streams(*(substream(seed, name) for name in Streams._fields))
