"""Lens spaces and formal oriented connected sums of them.

``L(p, q)`` is ``-p/q`` surgery on the unknot; two lens spaces are
orientation-preservingly diffeomorphic iff ``q' = q^{+-1} mod p``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce

from .abelian import FiniteAbelianGroup
from .qarith import mod_inverse


@dataclass(frozen=True, order=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self):
        if not self.p > self.q > 0:
            raise ValueError("L(p,q) needs p > q > 0, got L(%d,%d)" % (self.p, self.q))
        if math.gcd(self.p, self.q) != 1:
            raise ValueError("L(%d,%d): p and q not coprime" % (self.p, self.q))

    @classmethod
    def normalized(cls, p: int, q: int) -> "LensSpace | None":
        """``L(p, q)`` with ``q`` reduced mod ``p``; ``None`` stands for S^3."""
        if p < 1:
            raise ValueError("p must be positive")
        if math.gcd(p, q) != 1:
            raise ValueError("L(%d,%d): p and q not coprime" % (p, q))
        if p == 1:
            return None
        return cls(p, q % p)

    @property
    def key(self) -> tuple[int, int]:
        """Canonical key: equal keys iff orientation-preserving diffeomorphic."""
        return (self.p, min(self.q, mod_inverse(self.q, self.p)))

    def canonical(self) -> "LensSpace":
        return LensSpace(*self.key)

    def __neg__(self) -> "LensSpace":
        return reverse_orientation(self)

    def __str__(self) -> str:
        return "L(%d,%d)" % (self.p, self.q)


def reverse_orientation(L: LensSpace) -> LensSpace:
    return LensSpace(L.p, L.p - L.q)


def same_oriented_diffeo(L1: LensSpace, L2: LensSpace) -> bool:
    return L1.key == L2.key


def is_amphichiral(L: LensSpace) -> bool:
    return (L.q * L.q + 1) % L.p == 0


class LensSum:
    """A finite multiset of lens spaces; the empty sum is S^3.

    Summands are stored in canonical form, so equality of two sums is
    equality up to orientation-preserving diffeomorphism of the summands.
    """

    __slots__ = ("_counts",)

    def __init__(self, summands=()):
        counts: Counter = Counter()
        for L in summands:
            if L is None:
                continue
            if not isinstance(L, LensSpace):
                L = LensSpace(*L)
            counts[L.canonical()] += 1
        self._counts = counts

    @property
    def summands(self) -> list[LensSpace]:
        return sorted(self._counts.elements())

    def counts(self) -> dict[LensSpace, int]:
        return dict(self._counts)

    def __iter__(self):
        return iter(self.summands)

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LensSum):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        return hash(tuple(self.summands))

    def __add__(self, other: "LensSum") -> "LensSum":
        return LensSum(self.summands + other.summands)

    def __neg__(self) -> "LensSum":
        return LensSum(reverse_orientation(L) for L in self.summands)

    def __mul__(self, n: int) -> "LensSum":
        if n < 0:
            return (-self) * (-n)
        return LensSum(self.summands * n)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return "LensSum(%s)" % str(self)

    def __str__(self) -> str:
        return format_sum(self)

    def homology_order(self) -> int:
        return reduce(lambda a, b: a * b, (L.p for L in self.summands), 1)


def format_sum(X: LensSum, empty: str = "S3") -> str:
    if not X:
        return empty
    parts = []
    for L in sorted(X.counts()):
        n = X.counts()[L]
        parts.append(str(L) if n == 1 else "%d*%s" % (n, L))
    return " # ".join(parts)


def h1(X: LensSum) -> FiniteAbelianGroup:
    """First homology of the connected sum, ``(+)_i Z/p_i``."""
    return FiniteAbelianGroup.from_cyclic(L.p for L in X.summands)
