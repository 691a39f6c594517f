"""Portable SplitMix64 generator.

The stream is fully specified by a few integer constants so the same subset
sequence can be reproduced in any language:

* state advance: ``state += 0x9E3779B97F4A7C15 (mod 2**64)``
* output mix: ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31`` (all mod ``2**64``)
* uniform double: ``(next >> 11) * 2**-53``
* integer below ``k``: ``(next * k) >> 64``
* normal pair: Box-Muller on ``u1 = 1 - uniform()``, ``u2 = uniform()``,
  yielding ``r cos(2 pi u2)`` then ``r sin(2 pi u2)``
* per-trial substream ``i`` of seed ``s``: a fresh generator seeded with
  ``mix(s + GOLDEN * (i + 1))``
"""

from __future__ import annotations

import math

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * MIX1) & MASK
    z = ((z ^ (z >> 27)) * MIX2) & MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= int(seed) <= MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = int(seed)
        self._spare = None

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK
        return mix64(self.state)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, k: int) -> int:
        return (self.next_u64() * k) >> 64

    def normal(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def sign(self) -> float:
        return 1.0 if self.next_u64() >> 63 else -1.0

    def partial_shuffle(self, n: int, k: int) -> list[int]:
        """First ``k`` entries of a Fisher-Yates shuffle of ``range(n)``."""
        idx = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]


def substream(seed: int, index: int) -> SplitMix64:
    return SplitMix64(mix64((int(seed) + GOLDEN * (int(index) + 1)) & MASK))
