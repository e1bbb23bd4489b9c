"""Reproducible counter-based random streams.

Each trajectory of a run gets its own Philox stream keyed by
(seed, trajectory index), so sweeps can be dispatched in any order (or in
parallel) without stream overlap and with byte-identical results.
"""

import numpy as np


def rng_stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator for trajectory ``index`` of a run with ``seed``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and stream index must be non-negative")
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
