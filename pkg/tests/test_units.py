import math
from fractions import Fraction

import pytest

from mixapprox.catalog import lookup
from mixapprox.construct.pipeline import choose_delta
from mixapprox.exact.interval import dist_to_nearest_int
from mixapprox.units import (InsufficientUnits, SearchParams, UnitSystem, box_tolerances, check_independence,
                             constraint_shape, default_M_bound, find_units, lemma3_search, normalize_for_p,
                             peck_sequence, positive_units)

FIELDS = ["sqrt2", "golden", "cbrt2", "plastic", "quartic"]


@pytest.fixture(scope="module")
def systems():
    out = {}
    for name in FIELDS:
        K, entry = lookup(name)
        out[name] = (K, find_units(K, 3, entry.known_units))
    return out


@pytest.mark.parametrize("name", FIELDS)
def test_found_units_are_units_and_independent(systems, name):
    K, S = systems[name]
    assert S.r == K.unit_rank
    for u in S.units:
        assert abs(u.norm()) == 1
        assert all(c.denominator == 1 for c in u.coords)
    assert check_independence(list(S.units), K)


@pytest.mark.parametrize("name", FIELDS)
def test_search_without_known_units(name):
    K, _ = lookup(name)
    S = find_units(K, 3)
    assert S.r == K.unit_rank and check_independence(list(S.units), K)


def test_dependent_units_are_detected():
    K, _ = lookup("sqrt2")
    u = K.element([1, 1])
    assert not check_independence([u, u * u], K)
    assert not check_independence([K.one], K)
    Q, _ = lookup("quartic")
    v, w = Q.element([0, 1, 0, 0]), Q.element([0, 1, 0, 1])
    assert check_independence([v, w], Q)
    assert not check_independence([v, v ** 3 * (-1)], Q)


def test_coordinate_bound_validation():
    K, _ = lookup("cbrt2")
    with pytest.raises(ValueError):
        find_units(K, 0)


def test_insufficient_units():
    # x^2 - 7: the fundamental unit 8 + 3*sqrt7 has coordinates above 2
    from mixapprox.exact.poly import IntPolynomial
    from mixapprox.field import NumberField
    K = NumberField(IntPolynomial([-7, 0, 1]))
    with pytest.raises(InsufficientUnits):
        find_units(K, 2)


@pytest.mark.parametrize("name,p", [("sqrt2", 3), ("golden", 2), ("cbrt2", 5), ("plastic", 3), ("quartic", 3)])
def test_normalisation_mod_p_squared(systems, name, p):
    K, S = systems[name]
    N = normalize_for_p(S, p)
    for u in N.units:
        assert all(c % (p * p) == 0 for c in (u - 1).int_coords())
        for j in range(K.r1):
            assert K.embed(u, j).re.sign() == 1
    # the order is minimal: no proper divisor of M already works
    for b, sign, power, M in zip(N.base, N.signs, N.powers, N.power_M):
        base = power // M
        for k in range(1, M):
            if M % k == 0:
                e = (b ** (base * k)) * (sign if (base * k) % 2 else 1)
                # a proper divisor fails the congruence or positivity
                ok = all(c % (p * p) == 0 for c in (e - 1).int_coords())
                assert not ok or any(K.embed(e, j).re.sign() != 1 for j in range(K.r1))


def test_normalise_rejects_composite(systems):
    with pytest.raises(ValueError):
        normalize_for_p(systems["sqrt2"][1], 9)


def test_constraint_shapes():
    assert constraint_shape(lookup("sqrt2")[0]) == ([], [])
    assert constraint_shape(lookup("cbrt2")[0]) == ([], [1])
    assert constraint_shape(lookup("quartic")[0]) == ([2], [2])


@pytest.mark.parametrize("name,p,s", [("cbrt2", 5, 1), ("cbrt2", 5, 2), ("plastic", 3, 1), ("sqrt2", 3, 2)])
def test_search_result_meets_box_constraints(systems, name, p, s):
    K, S = systems[name]
    N = normalize_for_p(S, p)
    data = choose_delta(K)
    C1, C2 = box_tolerances(K, data.delta)
    M = default_M_bound(N, p, s, C1, C2)
    cand = lemma3_search(N, SearchParams(s, data.delta, C1, C2, M), p=p)
    assert any(cand.mu)
    assert all(abs(m) < M for m in cand.mu)
    for y in cand.Y:
        assert abs(y).certainly_le(C1)
    for z in cand.Z:
        assert dist_to_nearest_int(z).certainly_le(C2)
    eta = cand.element()
    # 0 < eta < 1 at the distinguished embedding, and eta is a unit
    prec = 128 + 2 * max(abs(c).bit_length() for c in eta.int_coords())
    v = K.embed_real(eta, 0, prec)
    assert v.certainly_gt(0) and v.certainly_lt(1)
    assert cand.log_abs(0).certainly_lt(0)
    assert abs(eta.norm()) == 1
    # balanced conjugates: |sigma_j(eta)/sigma_1(eta) - 1| <= delta for j >= 2
    if K.n > 2:
        e1 = K.embed(eta, 1, prec)
        for j in range(2, K.n):
            q = K.embed(eta, j, prec) / e1 - 1
            assert q.abs_squared().certainly_le(data.delta ** 2)


def test_search_params_validation():
    with pytest.raises(ValueError):
        SearchParams(0, Fraction(0), Fraction(1), Fraction(1), 4)
    with pytest.raises(ValueError):
        SearchParams(0, Fraction(1, 2), Fraction(1), Fraction(1), 0)


def test_box_tolerances_are_rational_and_sufficient():
    K, _ = lookup("quartic")
    delta = Fraction(1, 4)
    C1, C2 = box_tolerances(K, delta)
    assert isinstance(C1, Fraction) and isinstance(C2, Fraction)
    worst = (math.exp(float(C1)) - 1) + math.exp(float(C1)) * 4 * math.pi * float(C2)
    assert worst <= float(delta)


@pytest.mark.parametrize("name", FIELDS)
def test_peck_sequence_sizes(systems, name):
    K, S = systems[name]
    P = positive_units(S)
    for u in P.units:
        assert K.embed_real(u, 0).certainly_gt(0)
    for m in (0, 1, 3, 7):
        term = peck_sequence(P, m)
        assert term.eta == P.combo_element(term.mu)
        if m == 0:
            assert term.eta == K.one
            continue
        # log|sigma_j(eta)| - m stays bounded as m grows
        for j in range(1, K.unit_rank + 1):
            drift = float(P.combo_log_abs(term.mu, j)) - m
            assert abs(drift) < 3


def test_unit_system_json(systems):
    K, S = systems["cbrt2"]
    obj = normalize_for_p(S, 5).to_json()
    assert obj["normalized_for"] == 5
    assert isinstance(UnitSystem(K, S.base).units[0], type(K.one))
