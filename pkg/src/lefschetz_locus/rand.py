"""Deterministic pseudo-random streams (splitmix64).

Every "random" object in the engine (matrices, lines, pencils) is drawn
from one of these streams, so a (seed, prime) pair pins the entire run
byte-for-byte, independent of platform and Python version.
"""

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class Stream:
    """splitmix64 generator."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n); bias is negligible for n << 2**64."""
        return self.next_u64() % n


def derive(seed: int, tag: int) -> int:
    """A child seed for an independent sub-stream (matrix vs. lines vs. retries)."""
    return Stream((seed & _MASK) ^ ((tag & _MASK) * _GAMMA & _MASK)).next_u64()
