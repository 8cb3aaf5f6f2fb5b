"""Layered, splittable random streams.

Every stochastic layer (degree sampling, stub matching, voter runs, walk
Monte Carlo) draws from its own stream derived from ``(seed, path)``, so a
layer can be quenched or replayed without disturbing the others.
"""
from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _path_word(part: int | str) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    part = int(part)
    if part < 0:
        raise ValueError(f"stream path components must be non-negative, got {part}")
    return part


def stream(seed: int, *path: int | str) -> np.random.Generator:
    """Generator for the stream addressed by ``(seed, *path)``.

    Distinct paths give statistically independent streams; the same path
    always reproduces the same stream.
    """
    key = tuple(_path_word(p) for p in path)
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def subseed(seed: int, *path: int | str) -> int:
    """A 63-bit integer seed for the stream addressed by ``(seed, *path)``."""
    return int(stream(seed, *path).integers(0, 2**63 - 1))


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def kernel_seeds(rng: np.random.Generator) -> tuple[np.uint64, np.uint64]:
    """Two nonzero 64-bit words to seed a jitted xorshift128+ state."""
    base = int(rng.integers(0, _MASK64, dtype=np.uint64, endpoint=True))
    s0 = _splitmix64(base)
    s1 = _splitmix64(s0)
    # an all-zero state is a fixed point of xorshift128+
    return np.uint64(s0 or 0x9E3779B97F4A7C15), np.uint64(s1 or 0xBF58476D1CE4E5B9)


def kernel_seeds_indexed(
    base: tuple[np.uint64, np.uint64], index: int
) -> tuple[np.uint64, np.uint64]:
    """Cheap per-replica reseeding: mixes ``index`` into a base seed pair."""
    s0 = _splitmix64(int(base[0]) ^ _splitmix64(index + 1))
    s1 = _splitmix64(int(base[1]) ^ s0)
    return np.uint64(s0 or 0x9E3779B97F4A7C15), np.uint64(s1 or 0xBF58476D1CE4E5B9)
