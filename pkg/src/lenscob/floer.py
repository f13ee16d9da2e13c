"""Casson-Walker invariants and correction terms of lens spaces and surgeries.

Orientation: ``L(p,q)`` is ``-p/q`` surgery on the unknot, so ``p/q`` surgery
on the unknot is ``L(p, p-q)``.  ``d_lens`` uses that orientation;
``d_surgery_unknot`` uses the usual surgery labeling ``l in Z/p``, and the
two agree up to an affine relabeling found by ``label_correspondence``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def _coprime(p: int, q: int) -> None:
    if p < 1 or math.gcd(p, q) != 1:
        raise ValueError("need coprime p >= 1 and q, got (%d, %d)" % (p, q))


def check_label(p: int, i: int) -> int:
    """Validate a spin^c label ``0 <= i < p``."""
    if not 0 <= i < p:
        raise ValueError("spin^c label %d out of range for Z/%d" % (i, p))
    return i


@lru_cache(maxsize=None)
def _cw(p: int, q: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    return (Fraction(1, 4) - Fraction(p * p + q * q + 1, 12 * p * q)
            - _cw(q, p % q))


def casson_walker_lens(p: int, q: int) -> Fraction:
    """lambda(L(p,q)), normalized so that lambda(L(2,1)) = 0."""
    _coprime(p, q)
    return _cw(p, q % p)


@lru_cache(maxsize=None)
def _d_lens(p: int, q: int, i: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    return (Fraction(1, 4) - Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q)
            - _d_lens(q, p % q, i % q))


def d_lens(p: int, q: int, i: int) -> Fraction:
    """Correction term of ``L(p,q)`` in spin^c structure ``i``."""
    if not (p > q > 0 and math.gcd(p, q) == 1):
        raise ValueError("need coprime p > q > 0")
    return _d_lens(p, q, check_label(p, i))


@lru_cache(maxsize=None)
def _d_os(p: int, q: int, i: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    return (Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q) - Fraction(1, 4)
            - _d_os(q, p % q, i % q))


def d_surgery_unknot(p: int, q: int, l: int) -> Fraction:
    """Correction term of ``p/q`` surgery on the unknot, label ``l``."""
    if q < 1:
        raise ValueError("need q > 0")
    _coprime(p, q)
    return _d_os(p, q, check_label(p, l))


@dataclass(frozen=True)
class VSequence:
    """Non-increasing sequence ``V_0, V_1, ...`` that is eventually 0.

    Consecutive terms drop by at most one.  Indices past the stored tail
    read as 0.
    """

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals or vals[-1] != 0:
            raise ValueError("V-sequence must be nonempty and end in 0")
        if any(v < 0 for v in vals):
            raise ValueError("V-sequence values must be non-negative")
        for a, b in zip(vals, vals[1:]):
            if not a - 1 <= b <= a:
                raise ValueError("V-sequence step %d -> %d violates V_i - 1 <= V_i+1 <= V_i"
                                 % (a, b))

    @classmethod
    def zero(cls) -> "VSequence":
        return cls((0,))

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative V index")
        return self.values[i] if i < len(self.values) else 0

    def __str__(self) -> str:
        return ",".join(map(str, self.values))


def surgery_max_term(p: int, q: int, V: VSequence, l: int) -> int:
    return max(V[l // q], V[(p + q - 1 - l) // q])


def d_surgery(p: int, q: int, V: VSequence, l: int) -> Fraction:
    """Correction term of ``p/q`` surgery on a knot with V-sequence ``V``."""
    return d_surgery_unknot(p, q, l) - 2 * surgery_max_term(p, q, V, l)


def nu_plus_is_zero(V: VSequence) -> bool:
    return V[0] == 0


@lru_cache(maxsize=None)
def label_correspondence(p: int, q: int) -> tuple[int, int]:
    """``(a, b)`` with ``d_surgery_unknot(p,q,l) = d_lens(p, p-q', (a*l+b) % p)``.

    Here ``q' = q mod p``.  The first pair in lexicographic order is
    returned; ``a`` is a unit mod ``p``.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    _coprime(p, q)
    r = (-q) % p
    src = [d_surgery_unknot(p, q, l) for l in range(p)]
    dst = [d_lens(p, r, i) for i in range(p)]
    for a in range(1, p):
        if math.gcd(a, p) != 1:
            continue
        for b in range(p):
            if all(src[l] == dst[(a * l + b) % p] for l in range(p)):
                return a, b
    raise ArithmeticError("no affine label correspondence for %d/%d" % (p, q))
