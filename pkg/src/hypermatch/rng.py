"""Deterministic 64-bit randomness with labeled substreams.

The generator is counter based: draw number ``t`` of a stream keyed by
``seed`` is ``mix64(seed + t * GOLDEN)`` where :func:`mix64` is the
SplitMix64 finalizer. Identical seeds reproduce identical draws on every
platform, block draws match scalar draws bit for bit, and the stream for
``seed`` equals the reference SplitMix64 sequence started at ``seed``.

Substreams for labeled purposes (trial indices, pipeline stages, retry
counters) are derived by :func:`substream`, which pushes the (seed, label)
pair through the same finalizer. Distinct labels give unrelated streams, so
callers may draw from substreams concurrently without coordination.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15  # odd, so multiplication by it is a bijection mod 2**64

_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a bijective avalanche on 64-bit words."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * _MUL1) & MASK64
    x = ((x ^ (x >> 27)) * _MUL2) & MASK64
    return x ^ (x >> 31)


def substream(seed: int, label: int) -> int:
    """Seed of the independent stream identified by (seed, label)."""
    return mix64(mix64(seed) ^ ((label & MASK64) * GOLDEN & MASK64))


def _mix64_array(x: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2**64, matching mix64 exactly
    x = x.copy()
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MUL1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MUL2)
    x ^= x >> np.uint64(31)
    return x


class Rng:
    """Counter-based stream of 64-bit words keyed by a seed.

    Every scalar draw advances the counter by one; block draws advance it
    by the block length and return exactly the words the scalar path would
    have produced.
    """

    __slots__ = ("key", "counter")

    def __init__(self, seed: int):
        self.key = seed & MASK64
        self.counter = 0

    def u64(self) -> int:
        self.counter += 1
        return mix64((self.key + self.counter * GOLDEN) & MASK64)

    def u64_block(self, count: int) -> np.ndarray:
        if count < 0:
            raise ValueError("count must be nonnegative")
        start = self.counter
        self.counter += count
        ticks = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        return _mix64_array(np.uint64(self.key) + ticks * np.uint64(GOLDEN))

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.u64() >> 11) * 2.0**-53

    def uniform_block(self, count: int) -> np.ndarray:
        return (self.u64_block(count) >> np.uint64(11)) * 2.0**-53

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        zone = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.u64()
            if x < zone:
                return x % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> list[int]:
        items = list(range(n))
        self.shuffle(items)
        return items

    def choose(self, n: int, count: int) -> list[int]:
        """``count`` distinct integers from [0, n), deterministic in the stream."""
        if not 0 <= count <= n:
            raise ValueError("need 0 <= count <= n")
        items = list(range(n))
        for i in range(count):
            j = i + self.below(n - i)
            items[i], items[j] = items[j], items[i]
        return items[:count]
