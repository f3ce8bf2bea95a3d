"""Counter-based random streams.

Every Monte Carlo loop in this package draws from a stream derived from
(seed, index...) so that serial and parallel executions of the same
experiment produce bit-identical results regardless of worker count.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *path: int) -> np.random.Generator:
    """Independent Philox stream for a (seed, index...) coordinate."""
    ss = np.random.SeedSequence([int(seed), *[int(p) for p in path]])
    return np.random.Generator(np.random.Philox(seed=ss))
