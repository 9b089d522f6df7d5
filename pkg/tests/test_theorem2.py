import math
from fractions import Fraction

import pytest

from mixapprox.catalog import lookup
from mixapprox.construct.theorem2 import gamma_decomposition, kappa_fit, nearest_log, unit_power_records
from mixapprox.exact.padic import PAdicAbs
from mixapprox.units import find_units, positive_units


def synthetic_points(kappa, p=3, heights=(10, 10**3, 10**6, 10**12, 10**40)):
    """u = (log 3H)^(-kappa) up to the rounding of a rational exponent."""
    out = []
    for H in heights:
        e = -kappa * math.log(math.log(3 * H)) / math.log(p)
        out.append((H, PAdicAbs(p, Fraction(e).limit_denominator(10**12))))
    return out


def test_synthetic_kappa_is_recovered():
    fit = kappa_fit(synthetic_points(2.0))
    assert abs(fit.kappa - 2.0) < 1e-6
    assert not fit.degenerate and fit.all_obey
    assert max(abs(r) for r in fit.residuals) < 1e-6


def test_unit_u_is_degenerate():
    fit = kappa_fit([(H, PAdicAbs(3, Fraction(0))) for H in (5, 50, 500)])
    assert fit.degenerate and fit.kappa == 0 and fit.skipped == 3


def test_floor_violation_is_reported():
    pts = synthetic_points(1.0)
    H, _ = pts[0]
    pts[0] = (H, PAdicAbs(3, Fraction(-40)))  # far below the floor
    fit = kappa_fit(pts, tol=0.05)
    assert not fit.all_obey


@pytest.mark.parametrize("H,m", [(1, 0), (2, 1), (20, 3), (21, 3), (10**6, 14)])
def test_nearest_log(H, m):
    assert nearest_log(H) == m
    assert abs(m - math.log(H)) <= 0.5


@pytest.fixture(scope="module")
def golden():
    K, entry = lookup("golden")
    S = find_units(K, 3, entry.known_units)
    return K, S


def test_single_record_gives_one_gamma(golden):
    K, S = golden
    recs = [r for r in unit_power_records(K, S, 2, [10]) if r.accepted]
    rep = gamma_decomposition(K, recs, positive_units(S), 2)
    assert len(rep.gamma_set) == 1 and not rep.violations


def test_unit_power_family_has_finitely_many_gammas(golden):
    K, S = golden
    recs = unit_power_records(K, S, 2, range(3, 120))
    assert all(r.accepted for r in recs)
    rep = gamma_decomposition(K, recs, positive_units(S), 2)
    assert len(rep.gamma_set) <= 6
    assert rep.stalled(window=25)
    assert all(rep.approx_ok) and all(rep.value_ok)
    for e, rec in zip(rep.entries, recs):
        assert e.within_ceiling
        # gamma * eta_m reproduces the exact value P(alpha) in the field
        from mixapprox.construct.theorem2 import value_as_element
        from mixapprox.units import peck_sequence
        assert e.gamma * peck_sequence(positive_units(S), e.m).eta == value_as_element(K, rec.P)
    obj = rep.to_json()
    assert obj["kappa_fit"]["kappa"] == rep.kappa.kappa


def test_records_without_polynomial_are_skipped(golden):
    from mixapprox.construct.pipeline import ApproxRecord
    K, S = golden
    rep = gamma_decomposition(K, [ApproxRecord(s=0, p=2, status="rejected")], positive_units(S), 2)
    assert rep.entries == [] and rep.gamma_set == []
