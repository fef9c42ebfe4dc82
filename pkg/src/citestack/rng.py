"""Portable seeded PRNG used by the synthetic benchmark generator.

The generator is PCG32 (pcg32 XSH RR 64/32, O'Neill): 64-bit LCG state with
multiplier 6364136223846793005 and an odd stream increment, output permuted by
an xorshift-high followed by a random rotate of the top bits.  Integers in a
range are drawn by unbiased rejection sampling on the 32-bit output.

The algorithm is fully pinned here so that identical seeds reproduce identical
benchmark files on any platform or implementation; do not swap it for a
library RNG without regenerating the committed golden dataset.
"""

from __future__ import annotations

_MULT = 6364136223846793005
_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1


class Pcg32:
    """PCG32 stream. ``seed`` selects the state, ``stream`` the increment."""

    def __init__(self, seed: int, stream: int = 0):
        self._inc = ((stream << 1) | 1) & _MASK64
        self._state = 0
        self.next_uint32()
        self._state = (self._state + (seed & _MASK64)) & _MASK64
        self.next_uint32()

    def next_uint32(self) -> int:
        old = self._state
        self._state = (old * _MULT + self._inc) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & _MASK32
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & _MASK32

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) without modulo bias."""
        if n <= 0:
            raise ValueError("randbelow() requires n >= 1")
        threshold = (_MASK32 + 1 - n) % n
        while True:
            r = self.next_uint32()
            if r >= threshold:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, seq):
        if not seq:
            raise ValueError("choice() on empty sequence")
        return seq[self.randbelow(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
