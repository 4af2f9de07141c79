"""Deterministic seed derivation for reproducible parallel ensembles.

Every random choice in a run flows from a single 64-bit master seed.
Sub-streams are derived with SplitMix64: each path component is folded into
the running state, so ``derive_seed(master, r, stream)`` depends only on its
arguments — never on execution order, worker count, or resume point.
"""

import numpy as np

_MASK64 = (1 << 64) - 1

# Stream tags; realization r draws from derive_seed(master, r, <stream>).
GRAPH_STREAM = 0
SUBTRACT_STREAM = 1
BOOTSTRAP_STREAM = 2


def splitmix64(x: int) -> int:
    """One SplitMix64 output step (Steele, Lea & Flood mixing constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, *path: int) -> int:
    """Derive a 64-bit stream seed from a master seed and an index path."""
    state = master & _MASK64
    for part in path:
        state = splitmix64(state ^ splitmix64(part & _MASK64))
    return splitmix64(state)


def rng_for(master: int, *path: int) -> np.random.Generator:
    """A PCG64 generator seeded from ``derive_seed(master, *path)``."""
    return np.random.default_rng(derive_seed(master, *path))


def string_tag(text: str) -> int:
    """FNV-1a hash of a label, for deriving seeds from group names."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK64
    return h
