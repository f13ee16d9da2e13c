"""Finite abelian groups stored by their primary decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import zip_longest

from .qarith import factorize


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``parts[p] = (l1 >= l2 >= ...)`` means the p-part is ``(+)_i Z/p^li``."""

    parts: tuple[tuple[int, tuple[int, ...]], ...] = field(default=())

    def __post_init__(self):
        clean = []
        for p, lam in sorted(self.parts):
            lam = tuple(sorted((x for x in lam if x), reverse=True))
            if any(x < 0 for x in lam):
                raise ValueError("negative exponent in partition %r" % (lam,))
            if lam:
                clean.append((p, lam))
        object.__setattr__(self, "parts", tuple(clean))

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @classmethod
    def from_cyclic(cls, orders) -> "FiniteAbelianGroup":
        """Group ``(+)_i Z/n_i`` for the given orders (1's are ignored)."""
        acc: dict[int, list[int]] = {}
        for n in orders:
            if n < 1:
                raise ValueError("cyclic order must be positive, got %d" % n)
            for p, e in factorize(n).items():
                acc.setdefault(p, []).append(e)
        return cls(tuple((p, tuple(v)) for p, v in acc.items()))

    def partition(self, p: int) -> tuple[int, ...]:
        return dict(self.parts).get(p, ())

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.parts]

    def order(self) -> int:
        n = 1
        for p, lam in self.parts:
            n *= p ** sum(lam)
        return n

    def is_trivial(self) -> bool:
        return not self.parts

    def __add__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        acc = {p: list(lam) for p, lam in self.parts}
        for p, lam in other.parts:
            acc.setdefault(p, []).extend(lam)
        return FiniteAbelianGroup(tuple((p, tuple(v)) for p, v in acc.items()))

    def elementary_divisors(self) -> list[int]:
        return [p**e for p, lam in self.parts for e in lam]

    def invariant_factors(self) -> list[int]:
        """Invariant factors ``d_1 | d_2 | ...`` (largest last)."""
        width = max((len(lam) for _, lam in self.parts), default=0)
        out = [1] * width
        for p, lam in self.parts:
            for i, e in enumerate(lam):
                out[width - 1 - i] *= p**e
        return out

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        return " + ".join("Z/%d" % d for d in self.elementary_divisors())

    def to_json(self) -> dict:
        return {
            "order": self.order(),
            "primary": {str(p): list(lam) for p, lam in self.parts},
            "invariant_factors": self.invariant_factors(),
        }


def embeds(a: FiniteAbelianGroup, b: FiniteAbelianGroup) -> bool:
    """True iff ``a`` is isomorphic to a subgroup of ``b``.

    Per prime, the exponent partition of ``a`` has to fit inside that of
    ``b`` as a Young diagram.
    """
    for p, lam in a.parts:
        mu = b.partition(p)
        if len(lam) > len(mu):
            return False
        for x, y in zip_longest(lam, mu, fillvalue=0):
            if x > y:
                return False
    return True
