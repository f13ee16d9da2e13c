import math

import pytest
from hypothesis import given, strategies as st

from lenscob.abelian import FiniteAbelianGroup
from lenscob.lens import (LensSpace, LensSum, h1, is_amphichiral, reverse_orientation,
                          same_oriented_diffeo)


@st.composite
def lens_spaces(draw, max_p=200):
    p = draw(st.integers(2, max_p))
    q = draw(st.integers(1, p - 1).filter(lambda q: math.gcd(p, q) == 1))
    return LensSpace(p, q)


def test_validation():
    for bad in [(4, 2), (3, 3), (3, 0), (2, 5)]:
        with pytest.raises(ValueError):
            LensSpace(*bad)
    assert LensSpace.normalized(1, 0) is None
    assert LensSpace.normalized(7, 9) == LensSpace(7, 2)


def test_reverse_orientation():
    assert reverse_orientation(LensSpace(2, 1)) == LensSpace(2, 1)
    assert reverse_orientation(LensSpace(8, 5)) == LensSpace(8, 3)
    assert reverse_orientation(LensSpace(5, 2)) == LensSpace(5, 3)


def test_same_oriented_diffeo():
    assert same_oriented_diffeo(LensSpace(7, 2), LensSpace(7, 4))
    assert not same_oriented_diffeo(LensSpace(7, 2), LensSpace(7, 3))
    assert same_oriented_diffeo(LensSpace(5, 2), LensSpace(5, 2))


def test_amphichiral():
    assert is_amphichiral(LensSpace(2, 1))
    assert is_amphichiral(LensSpace(5, 2))
    assert not is_amphichiral(LensSpace(7, 1))


def test_h1():
    assert h1(LensSum()).is_trivial()
    assert h1(LensSum([LensSpace(9, 2), LensSpace(3, 1)])).partition(3) == (2, 1)
    assert h1(LensSum([LensSpace(6, 1)])) == FiniteAbelianGroup.from_cyclic([2, 3])


def test_sum_formatting_and_algebra():
    X = LensSum([LensSpace(7, 4), LensSpace(7, 2), LensSpace(3, 1)])
    assert str(X) == "L(3,1) # 2*L(7,2)"
    assert str(LensSum()) == "S3"
    assert -(-X) == X
    assert X + LensSum() == X
    assert len(2 * X) == 6


@given(lens_spaces())
def test_reversal_is_involution(L):
    assert reverse_orientation(reverse_orientation(L)) == L


@given(lens_spaces())
def test_amphichiral_lens_is_its_own_reverse(L):
    if is_amphichiral(L):
        assert same_oriented_diffeo(reverse_orientation(L), L)


@given(st.lists(lens_spaces(60), max_size=5))
def test_h1_order_multiplicative(Ls):
    assert h1(LensSum(Ls)).order() == math.prod(L.p for L in Ls)
