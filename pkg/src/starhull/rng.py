"""Reproducible substream seeding.

Replica substreams are derived from a 64-bit master seed by mixing the
replica index through the splitmix64 finalizer.  The mixer has full
avalanche, so consecutive indices yield statistically unrelated seeds and
the assignment is independent of scheduling: replica ``i`` always sees the
same stream no matter how many workers run or in what order chunks finish.
"""

from __future__ import annotations

import secrets

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

_U64 = np.uint64


def mix64(z):
    """splitmix64 finalizer; accepts a uint64 scalar or array (wraps mod 2^64)."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _U64(30))) * _MIX1
        z = (z ^ (z >> _U64(27))) * _MIX2
    return z ^ (z >> _U64(31))


def substream_seed(master_seed: int, index):
    """Seed of substream ``index`` under ``master_seed`` (vectorizes over index)."""
    master = np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF)
    idx = np.asarray(index, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(master + (idx + _U64(1)) * _GOLDEN)


def substream(master_seed: int, index: int) -> np.random.Generator:
    """Independent generator for replica ``index`` of run ``master_seed``."""
    return np.random.Generator(np.random.PCG64(int(substream_seed(master_seed, index))))


def entropy_seed() -> int:
    """Fresh 64-bit seed from the OS entropy pool."""
    return secrets.randbits(64)
