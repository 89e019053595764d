from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_quads, quads
from u2slopes.exact import INFINITY, ONE, SQRT2, ZERO, HalfVal, QuadRat, val2, val2_int, val2_quad


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == QuadRat(2)
    assert SQRT2.inverse() == QuadRat(0, Fraction(1, 2))


@pytest.mark.parametrize("n,v", [(1, 0), (2, 1), (12, 2), (-96, 5), (1024, 10)])
def test_val2_int(n, v):
    assert val2_int(n) == v


def test_val2_rationals_and_zero():
    assert val2(Fraction(3, 8)) == -3
    assert val2(0) == INFINITY
    assert val2_quad(ZERO).is_infinite


@pytest.mark.parametrize(
    "x,twice",
    [(SQRT2, 1), (QuadRat(2), 2), (QuadRat(1, 1), 0), (QuadRat(2, 1), 1), (QuadRat(4, 2), 3), (QuadRat(0, Fraction(1, 2)), -1)],
)
def test_val2_quad_half_integers(x, twice):
    assert val2_quad(x).twice == twice


def test_halfval_ordering():
    assert HalfVal.of(Fraction(1, 2)) < 1
    assert INFINITY > 10 ** 6
    assert HalfVal.of(2) + HalfVal.of(Fraction(1, 2)) == HalfVal.of(Fraction(5, 2))
    assert str(HalfVal.of(Fraction(3, 2))) == "3/2"


@given(quads, quads, quads)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(nonzero_quads)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE
    assert a ** -2 * a ** 2 == ONE


@given(quads, quads)
def test_valuation_multiplicative(a, b):
    assert val2_quad(a * b) == val2_quad(a) + val2_quad(b)


@given(quads, quads)
def test_valuation_ultrametric(a, b):
    assert val2_quad(a + b) >= min(val2_quad(a), val2_quad(b))


@given(quads)
def test_norm_and_conjugate(a):
    assert (a * a.conjugate()).b == 0
    assert a.norm() == (a * a.conjugate()).a


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@pytest.mark.parametrize("x,r", [(QuadRat(3), 1), (QuadRat(2), 0), (QuadRat(5, 2), 1), (QuadRat(Fraction(1, 3)), 1)])
def test_mod2(x, r):
    assert x.mod2() == r


def test_mod2_rejects_nonintegral():
    with pytest.raises(ValueError):
        QuadRat(Fraction(1, 2)).mod2()


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_hash_consistent(a, b):
    x = QuadRat(a, b)
    y = QuadRat.from_ints(2 * a, 2 * b, 2)
    assert x == y and hash(x) == hash(y)
