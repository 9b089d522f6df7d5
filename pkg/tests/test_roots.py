import random
from fractions import Fraction

import mpmath
import pytest
import sympy

from mixapprox.exact.poly import IntPolynomial
from mixapprox.exact.roots import complex_roots, isolate_real_roots, refine_root

X = sympy.Symbol("x")
POLYS = [[-2, 0, 1], [-2, 0, 0, 1], [1, 0, 1], [-1, -1, 0, 0, 1], [1, 0, 0, 0, 1], [-1, -1, 0, 0, 0, 0, 1],
         [6, -11, 6, -1], [-1, 3, 0, -1]]


def sympy_roots(coeffs, dps=50):
    return sympy.Poly(list(reversed(coeffs)), X).nroots(n=dps)


@pytest.mark.parametrize("coeffs", POLYS)
def test_real_isolation_matches_sympy(coeffs):
    P = IntPolynomial(coeffs)
    ivs = isolate_real_roots(P)
    reals = sorted(float(r) for r in sympy.real_roots(sympy.Poly(list(reversed(coeffs)), X)))
    assert len(ivs) == len(reals)
    for iv, r in zip(ivs, reals):
        assert iv.lower <= Fraction(r) + Fraction(1, 10**12) and Fraction(r) - Fraction(1, 10**12) <= iv.upper
    for a, b in zip(ivs, ivs[1:]):
        assert a.upper < b.lower


def test_refine_to_tiny_width_against_mpmath():
    P = IntPolynomial([-2, 0, 0, 1])
    iv = refine_root(P, isolate_real_roots(P)[0], Fraction(1, 2**2000))
    assert iv.width() <= Fraction(1, 2**2000)
    with mpmath.workdps(700):
        c = mpmath.cbrt(2)
        lo = mpmath.mpf(iv.lower.numerator) / iv.lower.denominator
        hi = mpmath.mpf(iv.upper.numerator) / iv.upper.denominator
        assert lo <= c <= hi


def test_refine_rejects_bad_input():
    P = IntPolynomial([-2, 0, 1])
    iv = isolate_real_roots(P)[0]
    with pytest.raises(ValueError):
        refine_root(P, iv, 0)


def test_isolation_refuses_repeated_roots():
    with pytest.raises(ValueError):
        isolate_real_roots(IntPolynomial([1, -2, 1]))


@pytest.mark.parametrize("coeffs", POLYS)
def test_complex_roots_enclose_sympy_roots(coeffs):
    P = IntPolynomial(coeffs)
    boxes = complex_roots(P, 80)
    ref = sympy_roots(coeffs)
    assert len(boxes) == len(ref)
    for r in ref:
        re, im = sympy.re(r), sympy.im(r)
        hits = [b for b in boxes if abs(complex(b) - complex(re, im)) < 1e-15]
        assert len(hits) == 1


def test_complex_root_order_reals_then_upper_then_conjugates():
    boxes = complex_roots(IntPolynomial([-1, -1, 0, 0, 0, 0, 1]), 64)
    vals = [complex(b) for b in boxes]
    reals = [v for v in vals[:2]]
    assert all(abs(v.imag) == 0 for v in reals) and reals[0].real < reals[1].real
    upper, lower = vals[2:4], vals[4:]
    assert all(v.imag > 0 for v in upper)
    assert all(abs(u.conjugate() - l) < 1e-12 for u, l in zip(upper, lower))


def test_random_polynomials_root_counts():
    rng = random.Random(11)
    for _ in range(25):
        coeffs = [rng.randint(-20, 20) for _ in range(rng.randint(2, 6))] + [1]
        P = IntPolynomial(coeffs)
        from mixapprox.exact.poly import squarefree_part
        P = squarefree_part(P)
        assert len(complex_roots(P, 64)) == P.degree
