import math
import random
from fractions import Fraction

import pytest

from lenscob.qarith import (eval_cont_frac, factorize, format_rational, is_perfect_square,
                            is_prime, mod_inverse, neg_cont_frac)


@pytest.mark.parametrize("p,q,cf", [(4, 1, [4]), (8, 5, [2, 3, 2]), (7, 5, [2, 2, 3])])
def test_neg_cont_frac_examples(p, q, cf):
    assert neg_cont_frac(p, q) == cf
    assert eval_cont_frac(cf) == Fraction(p, q)


def test_twos_chain():
    for k in range(1, 30):
        assert eval_cont_frac([2] * k) == Fraction(k + 1, k)


def test_round_trip_up_to_500():
    for p in range(2, 501):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                cf = neg_cont_frac(p, q)
                assert min(cf) >= 2
                assert eval_cont_frac(cf) == Fraction(p, q)


@pytest.mark.parametrize("p,q", [(4, 2), (3, 3), (2, 5), (5, 0)])
def test_neg_cont_frac_rejects(p, q):
    with pytest.raises(ValueError):
        neg_cont_frac(p, q)


def test_eval_rejects_small_coefficients():
    with pytest.raises(ValueError):
        eval_cont_frac([3, 1])
    with pytest.raises(ValueError):
        eval_cont_frac([])


def test_mod_inverse():
    assert mod_inverse(1, 7) == 1
    assert mod_inverse(2, 5) == 3
    assert mod_inverse(5, 8) == 5
    with pytest.raises(ValueError):
        mod_inverse(2, 4)
    for n in range(2, 80):
        for a in range(1, n):
            if math.gcd(a, n) == 1:
                b = mod_inverse(a, n)
                assert 0 <= b < n and a * b % n == 1


def test_squares_and_primes():
    assert is_perfect_square(4) == (True, 2)
    assert is_perfect_square(5)[0] is False
    assert is_perfect_square(36) == (True, 6)
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    for n in range(1, 500):
        assert math.prod(p ** e for p, e in factorize(n).items()) == n


def test_fraction_arithmetic_matches_cross_multiplication():
    # rationals are stdlib Fractions; check them against raw integer arithmetic
    rng = random.Random(20240501)
    for _ in range(10_000):
        a, b = rng.randint(1, 10**6), rng.randint(1, 10**6)
        c, d = rng.randint(1, 10**6), rng.randint(1, 10**6)
        x, y = Fraction(a, b), Fraction(c, d)
        s = x + y
        assert s.numerator * b * d == (a * d + c * b) * s.denominator
        assert math.gcd(s.numerator, s.denominator) == 1
        n = -x
        assert n.numerator * b == -a * n.denominator
        assert (x < y) == (a * d < c * b)
        assert (x == y) == (a * d == c * b)


def test_format_rational():
    assert format_rational(Fraction(-1, 18)) == "-1/18"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(0) == "0"
