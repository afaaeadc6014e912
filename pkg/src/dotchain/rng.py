"""Seed handling for reproducible stochastic runs.

Every stochastic routine takes an explicit (base_seed, stream) pair; streams
split off the base seed through numpy's SeedSequence spawn mechanism so that
trial t of a run is independent of the trial count and of evaluation order.
The algorithm identifier below is recorded in run manifests.
"""

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "numpy.random.PCG64 seeded by SeedSequence(entropy=base_seed, spawn_key=(stream,))"


def stream_rng(base_seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for the given stream of a base seed; deterministic and stable."""
    if base_seed < 0 or stream < 0:
        raise ValueError("base_seed and stream must be non-negative integers")
    seq = np.random.SeedSequence(base_seed, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(seq))
