"""Counter-based random streams built on the splitmix64 mixer.

Every sampler in this package draws from streams keyed by (seed, stream
ordinal).  A draw is a pure function of those two integers plus the draw
counter, so results do not depend on scheduling and any stream can be
regenerated in isolation (regions of the sampling table get one stream
each, replicates of an experiment get derived seeds).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
# Weyl increment used between consecutive draws of one stream.
GOLDEN = 0x9E3779B97F4A7C15
# Weyl increment used between consecutive stream bases (distinct from
# GOLDEN so neighbouring streams are not shifted copies of each other).
STREAM_STEP = 0xD1B54A32D192ED03

_INV_2_53 = 2.0 ** -53
_HALF_2_53 = 2.0 ** -54


def mix64(z: int) -> int:
    """Finalizing mixer of splitmix64 (Stafford variant 13)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorized mix64 over a uint64 array."""
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return z


def unit_from_bits(z: int) -> float:
    """Map 64 random bits to a double in the open interval (0, 1)."""
    return (z >> 11) * _INV_2_53 + _HALF_2_53


def stream_base(seed: int, ordinal: int) -> int:
    """Base state of stream `ordinal` under `seed`; draw k mixes base + k*GOLDEN."""
    return (seed + (ordinal + 1) * STREAM_STEP) & MASK64


def op_seed(seed: int, tag: int) -> int:
    """Decorrelated seed for a named sub-operation of a run."""
    return mix64((seed & MASK64) ^ mix64(tag))


def derive_seed(master_seed: int, index: int) -> int:
    """Seed for replicate `index` of an experiment run under `master_seed`."""
    return mix64(mix64(master_seed & MASK64) ^ (((index + 1) * GOLDEN) & MASK64))


# Operation tags (arbitrary fixed constants, one per independent consumer).
TAG_SAMPLE = 0x68797065726B3364  # hyperedge sampler streams
TAG_ACCEPT = 0x616363657074616E  # reserved; acceptance draws share region streams
TAG_NAIVE = 0x6E616976652D6672
TAG_NOISE = 0x6E6F6973652D6C76
TAG_KRON2D = 0x6B726F6E2D326420
TAG_ER = 0x657264732D72656E
TAG_MOTIF = 0x6D6F7469662D7479


@dataclass(frozen=True)
class RngSpec:
    """A reproducible stream: identical (seed, stream) gives identical draws."""

    seed: int
    stream: int = 0

    def raw(self, count: int, offset: int = 0) -> np.ndarray:
        """`count` raw 64-bit draws starting at draw `offset + 1`."""
        base = stream_base(self.seed, self.stream)
        ks = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
        z = np.uint64(base) + ks * np.uint64(GOLDEN)
        return mix64_array(z)

    def uniforms(self, count: int, offset: int = 0) -> np.ndarray:
        """`count` doubles in (0, 1), the counter-based analogue of random()."""
        z = self.raw(count, offset)
        return (z >> np.uint64(11)) * _INV_2_53 + _HALF_2_53
