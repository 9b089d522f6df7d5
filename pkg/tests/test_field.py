import random
from fractions import Fraction

import mpmath
import pytest
import sympy

from mixapprox.catalog import lookup
from mixapprox.exact.poly import IntPolynomial
from mixapprox.field import FieldError, NumberField

X = sympy.Symbol("x")
T = sympy.Symbol("t")


def sympy_norm(K, coords):
    """Norm through a resultant: N(g(theta)) = Res(f, g) for monic f."""
    f = sympy.Poly(list(reversed(K.min_poly.coeffs)), T)
    g = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * T**k for k, c in enumerate(coords)), T)
    return Fraction(str(sympy.resultant(f.as_expr(), g.as_expr(), T)))


def test_signature_and_rank(catalog_fields):
    expected = {"sqrt2": (2, 0, 1), "golden": (2, 0, 1), "cbrt2": (1, 1, 1), "plastic": (1, 1, 1), "quartic": (2, 1, 2)}
    for name, (r1, r2, r) in expected.items():
        K = catalog_fields[name]
        assert (K.r1, K.r2, K.unit_rank) == (r1, r2, r)


def test_rejects_non_monic_and_reducible():
    with pytest.raises(FieldError):
        NumberField(IntPolynomial([-2, 0, 2]))
    with pytest.raises(FieldError):
        NumberField(IntPolynomial([-1, 0, 1]))
    with pytest.raises(FieldError):
        NumberField(IntPolynomial([1, 0, 1]))  # no real root


def test_dual_basis_identities(catalog_fields):
    for K in catalog_fields.values():
        beta = K.dual_basis()
        for i in range(K.n):
            for j in range(K.n):
                assert ((K.theta ** i) * beta[j]).trace() == (1 if i == j else 0)


def test_norm_matches_resultant(catalog_fields):
    rng = random.Random(3)
    for K in catalog_fields.values():
        for _ in range(10):
            coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(K.n)]
            x = K.element(coords)
            assert x.norm() == sympy_norm(K, coords)


def test_inverse_and_field_axioms(catalog_fields):
    rng = random.Random(4)
    for K in catalog_fields.values():
        for _ in range(10):
            x = K.element([rng.randint(-5, 5) for _ in range(K.n)])
            y = K.element([rng.randint(-5, 5) for _ in range(K.n)])
            if x.is_zero():
                continue
            assert x * x.inverse() == K.one
            assert (x + y) * x == x * x + y * x
            assert (x * y).norm() == x.norm() * y.norm()


def test_cbrt2_inverse_of_theta():
    K, _ = lookup("cbrt2")
    assert K.theta.inverse() == K.element([0, 0, Fraction(1, 2)])


def test_embeddings_of_sqrt2():
    K, _ = lookup("sqrt2")
    u = K.element([1, 1])
    assert K.embed_real(u, 0).contains(K.alpha(200) + 1)
    with mpmath.workdps(50):
        assert abs(float(K.embed_real(u, 1)) - float(1 - mpmath.sqrt(2))) < 1e-15


def test_house_examples():
    K, _ = lookup("sqrt2")
    assert K.house(K.one).contains(1)
    h = K.house(K.theta, 128)
    assert (h * h).contains(2)
    h = K.house(K.element([1, 1]), 128)
    assert (h - 1).square().contains(2)


def test_trace_of_powers_matches_sympy(catalog_fields):
    for K in catalog_fields.values():
        roots = sympy.Poly(list(reversed(K.min_poly.coeffs)), X).nroots(n=40)
        for k in range(6):
            ref = sum(r**k for r in roots)
            assert abs(float(sympy.re(ref)) - float(K.power_trace(k))) < 1e-20 + 1e-25 * abs(float(K.power_trace(k)))


def test_json_form_is_exact():
    K, _ = lookup("cbrt2")
    assert K.element([Fraction(1, 3), -2, 0]).to_json() == ["1/3", "-2/1", "0/1"]
