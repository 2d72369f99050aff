"""SplitMix64 generator and the random samplers used by verification suites.

SplitMix64 is tiny and fully specified, so sample suites replay bit for bit
in any language given the same seed.
"""
from __future__ import annotations

from gmpy2 import mpq

from .groups import Perm, SeqElt, SignedUnipotentElt, symmetric_group
from .matgroup import Mat, heis, nil3
from .polypath import PolyPath

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """64-bit SplitMix generator."""

    def __init__(self, seed: int = 0):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Float in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform_range(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def randint(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]``, unbiased by rejection."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def rational(self, lo: int = -3, hi: int = 3, den: int = 4) -> mpq:
        """Rational ``k/den`` with ``lo <= k/den <= hi``."""
        return mpq(self.randint(lo * den, hi * den), den)

    def spawn(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


# samplers ------------------------------------------------------------------

def random_nil3(rng: SplitMix64, exact: bool = True, bound: int = 3, den: int = 4):
    if exact:
        return nil3(*(rng.rational(-bound, bound, den) for _ in range(3)))
    return nil3(*(rng.uniform_range(-bound, bound) for _ in range(3)), exact=False)


def random_heis(rng: SplitMix64, exact: bool = True, bound: int = 3, den: int = 4):
    if exact:
        return heis(*(rng.rational(-bound, bound, den) for _ in range(3)))
    return heis(*(rng.uniform_range(-bound, bound) for _ in range(3)), exact=False)


def random_polypath(rng: SplitMix64, degree: int, bound: int = 2, den: int = 4) -> PolyPath:
    """Exact 3x3 path with each coefficient drawn independently."""
    return PolyPath([random_nil3(rng, True, bound, den) for _ in range(degree + 1)], 3, True)


def random_matrix(rng: SplitMix64, dim: int, max_norm: float = 2.0) -> Mat:
    """Dense float matrix with Frobenius norm drawn uniformly in ``(0, max_norm]``."""
    while True:
        rows = [[rng.uniform_range(-1.0, 1.0) for _ in range(dim)] for _ in range(dim)]
        m = Mat(rows, exact=False)
        f = m.frobenius()
        if f > 0:
            break
    target = max_norm * (1.0 - rng.uniform())
    return m * (target / f)


def random_perm(rng: SplitMix64, n: int = 3) -> Perm:
    return rng.choice(symmetric_group(n))


def random_seq(rng: SplitMix64, base: list, max_support: int = 8) -> SeqElt:
    unit = base[0].identity()
    k = rng.randint(0, max_support)
    return SeqElt(tuple(rng.choice(base) for _ in range(k)), unit)


def random_signed(rng: SplitMix64, exact: bool = True) -> SignedUnipotentElt:
    return SignedUnipotentElt(rng.choice((1, -1)), random_heis(rng, exact))
