from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mixapprox.exact.interval import ComplexBox, RealInterval, atan2, dist_to_nearest_int

fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
pos = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10**6)


def hp(q):
    with mpmath.workdps(80):
        return mpmath.mpf(q.numerator) / q.denominator


def encloses(iv, value):
    with mpmath.workdps(80):
        return mpmath.mpf(iv.lower.numerator) / iv.lower.denominator <= value <= \
            mpmath.mpf(iv.upper.numerator) / iv.upper.denominator


@given(fracs, fracs)
def test_arithmetic_encloses_exact_result(a, b):
    A, B = RealInterval.exact(a, 64), RealInterval.exact(b, 64)
    assert (A + B).contains(a + b)
    assert (A - B).contains(a - b)
    assert (A * B).contains(a * b)
    if b:
        assert (A / B).contains(a / b)


@given(pos)
@settings(max_examples=80)
def test_elementary_functions_enclose_high_precision_values(x):
    X = RealInterval.exact(x, 96)
    with mpmath.workdps(80):
        v = hp(x)
        assert encloses(X.log(), mpmath.log(v))
        assert encloses(X.sqrt(), mpmath.sqrt(v))
        assert encloses(X.exp(), mpmath.exp(v))
        c, s = X.cos_sin()
        assert encloses(c, mpmath.cos(v)) and encloses(s, mpmath.sin(v))


def test_exact_dyadic_has_zero_width():
    assert RealInterval.exact(Fraction(3, 8)).is_point()
    assert not RealInterval.exact(Fraction(1, 3)).is_point()


def test_sign_and_comparisons():
    a = RealInterval.from_bounds(1, 2)
    b = RealInterval.from_bounds(3, 4)
    assert a.certainly_lt(b) and b.certainly_gt(a)
    assert RealInterval.from_bounds(-1, 1).sign() is None
    assert RealInterval.exact(0).sign() == 0
    assert not a.certainly_lt(RealInterval.from_bounds(Fraction(3, 2), 3))


def test_floor_if_decided():
    assert RealInterval.from_bounds(Fraction(5, 2), Fraction(11, 4)).floor_if_decided() == 2
    assert RealInterval.from_bounds(Fraction(7, 4), Fraction(9, 4)).floor_if_decided() is None


def test_to_json_is_dyadic():
    lo, hi = RealInterval.exact(Fraction(3, 8)).to_json()
    assert lo == hi == "3*2^-3"


def test_pi_and_atan2():
    with mpmath.workdps(60):
        assert encloses(RealInterval.pi(128), mpmath.pi)
        y, x = RealInterval.exact(1), RealInterval.exact(-1)
        assert encloses(atan2(y, x), 3 * mpmath.pi / 4)


def test_complex_box_arithmetic():
    z = ComplexBox(RealInterval.exact(1), RealInterval.exact(2))
    w = ComplexBox(RealInterval.exact(3), RealInterval.exact(-1))
    assert (z * w).contains(5, 5)
    assert (z / w).contains(Fraction(1, 10), Fraction(7, 10))
    assert z.abs_squared().contains(5)
    assert z.conjugate().contains(1, -2)
    assert (z ** 3).contains(-11, -2)


@pytest.mark.parametrize("x,expected", [(Fraction(7, 3), Fraction(1, 3)), (Fraction(5, 2), Fraction(1, 2)),
                                        (Fraction(-13, 10), Fraction(3, 10)), (4, 0)])
def test_dist_to_nearest_int_exact(x, expected):
    assert dist_to_nearest_int(x) == expected


@given(fracs, st.fractions(min_value=0, max_value=Fraction(1, 4), max_denominator=1000))
def test_dist_to_nearest_int_encloses_every_point(x, w):
    iv = RealInterval.from_bounds(x, x + w)
    d = dist_to_nearest_int(iv)
    for t in (x, x + w / 3, x + w / 2, x + w):
        assert d.contains(dist_to_nearest_int(t))
