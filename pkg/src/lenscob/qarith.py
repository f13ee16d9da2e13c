"""Exact integer and rational helpers.

Rationals are :class:`fractions.Fraction` throughout; nothing in the package
touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _check_pair(p: int, q: int) -> None:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise TypeError("expected integers, got %r, %r" % (p, q))
    if not p > q > 0:
        raise ValueError("need p > q > 0, got p=%d, q=%d" % (p, q))
    if math.gcd(p, q) != 1:
        raise ValueError("p=%d and q=%d are not coprime" % (p, q))


def neg_cont_frac(p: int, q: int) -> list[int]:
    """Return ``[a_1, ..., a_m]`` with every ``a_i >= 2`` and
    ``a_1 - 1/(a_2 - 1/(... - 1/a_m)) == p/q``.

    >>> neg_cont_frac(8, 5)
    [2, 3, 2]
    """
    _check_pair(p, q)
    coeffs = []
    while q:
        a = -(-p // q)  # ceiling division
        coeffs.append(a)
        p, q = q, a * q - p
    return coeffs


def eval_cont_frac(coeffs) -> Fraction:
    coeffs = list(coeffs)
    if not coeffs:
        raise ValueError("empty expansion")
    if any(a < 2 for a in coeffs):
        raise ValueError("coefficients must all be >= 2: %r" % (coeffs,))
    value = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        value = a - 1 / value
    return value


def mod_inverse(a: int, n: int) -> int:
    """Inverse of ``a`` modulo ``n`` in ``[0, n)``."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, n) != 1:
        raise ValueError("%d is not invertible modulo %d" % (a, n))
    if n == 1:
        return 0
    return pow(a, -1, n)


def is_perfect_square(n: int) -> tuple[bool, int | None]:
    if n < 0:
        return False, None
    r = math.isqrt(n)
    if r * r == n:
        return True, r
    return False, None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization, ``{prime: exponent}``."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)
