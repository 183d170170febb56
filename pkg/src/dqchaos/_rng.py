"""Counter-based random streams for reproducible ensemble sweeps.

Every sampler consumes a Philox (counter-based, 64-bit) generator keyed by
(seed, stream).  Realization r of an ensemble sweep uses stream(seed, r), so
sweeps can be executed in any order or in parallel and still be bit-identical
to the serial run.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def stream(seed: int, stream_id: int = 0) -> np.random.Generator:
    """Independent generator for (seed, stream_id); same pair, same bits."""
    key = np.array([seed & MASK64, stream_id & MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def substreams(seed: int, n: int, offset: int = 0):
    """n per-realization generators derived from one user-facing seed."""
    return [stream(seed, offset + i) for i in range(n)]
