"""Deterministic random-number streams for reproducible parallel Monte Carlo.

Every consumer of randomness derives a counter-based Philox generator from
(seed, *key), where the key encodes what the stream is for (a module tag plus
a block index).  Replication loops are split into fixed-size blocks, one
stream per block, so results are bitwise identical for any thread count:
the decomposition depends only on the rep count, never on the scheduler.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

__all__ = ["stream", "blocks", "map_blocks", "BLOCK_SIZE"]

BLOCK_SIZE = 8192


def stream(seed, *key):
    """A Generator fully determined by (seed, *key); all entries integers."""
    ss = np.random.SeedSequence((int(seed),) + tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def blocks(reps, block_size=BLOCK_SIZE):
    """Fixed decomposition of a replication count into (index, start, size)."""
    out = []
    start = 0
    idx = 0
    while start < reps:
        size = min(block_size, reps - start)
        out.append((idx, start, size))
        start += size
        idx += 1
    return out


def map_blocks(fn, reps, threads=1, block_size=BLOCK_SIZE):
    """Run fn(index, start, size) over every block, merging in block order.

    The return value is the list of per-block results sorted by block index,
    so any pure reduction over it is scheduler-independent.
    """
    plan = blocks(reps, block_size)
    if threads is None or threads <= 1 or len(plan) <= 1:
        return [fn(*b) for b in plan]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, *b) for b in plan]
        return [f.result() for f in futures]
