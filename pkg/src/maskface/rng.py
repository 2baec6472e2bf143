"""Seeded, platform-independent randomness (splitmix64).

Every stochastic decision in the pipeline (split shuffling, batch order,
horizontal flips, dropout masks, weight init) draws from this generator so
that a run is fully determined by its seeds.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """Finalizer applied to the raw counter state (two xorshift-multiply rounds)."""
    z = (z ^ (z >> 30)) * _MIX1 & _MASK64
    z = (z ^ (z >> 27)) * _MIX2 & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64 stream: state advances by a fixed odd constant, output is mixed.

    The scalar path uses Python integers (exact 64-bit wrap via masking); the
    bulk path uses vectorized uint64 math and produces the identical stream.
    """

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    @property
    def state(self) -> int:
        return self._state

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def next_u64_many(self, n: int) -> np.ndarray:
        """`n` consecutive draws as a uint64 array (same stream as next_u64)."""
        if n < 0:
            raise ValueError("n must be non-negative")
        steps = np.arange(1, n + 1, dtype=np.uint64)
        z = np.uint64(self._state) + steps * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
        self._state = (self._state + n * _GOLDEN) & _MASK64
        return z

    def uniform(self) -> float:
        """One float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniforms(self, n: int) -> np.ndarray:
        """`n` floats in [0, 1) as a float64 array."""
        bits = self.next_u64_many(n) >> np.uint64(11)
        return bits.astype(np.float64) * 2.0**-53

    def randrange(self, n: int) -> int:
        """Integer in [0, n). Modulo reduction; bias is negligible for n << 2^64."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def shuffle(self, seq) -> None:
        """In-place Fisher-Yates shuffle of a mutable sequence."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
