import json
import os
from fractions import Fraction
from itertools import product

import mpmath
import pytest

import mixapprox.scan.mixed as mixed
from mixapprox.catalog import lookup
from mixapprox.construct.degree import certify_degree
from mixapprox.exact.poly import IntPolynomial
from mixapprox.field import NumberField
from mixapprox.scan import cf_general, cf_quadratic, convergents, mixed_scan, problem_scan


def quadratic(c, b):
    return NumberField(IntPolynomial([c, b, 1]))


@pytest.mark.parametrize("field,pre,period", [
    (lambda: lookup("sqrt2")[0], (1,), (2,)),
    (lambda: lookup("golden")[0], (), (1,)),
    (lambda: quadratic(-3, 0), (1,), (1, 2)),
    (lambda: quadratic(-7, 0), (2,), (1, 1, 1, 4)),
    (lambda: NumberField(IntPolynomial([-2, 0, 1]), 0), (-2, 1, 1), (2,)),
])
def test_quadratic_expansions(field, pre, period):
    cf = cf_quadratic(field())
    assert cf.preperiod == pre and cf.period == period


def test_cbrt2_quotients():
    K, _ = lookup("cbrt2")
    assert cf_general(K, 6) == [1, 3, 1, 5, 1, 1]


@pytest.mark.parametrize("name", ["sqrt2", "golden"])
def test_general_matches_periodic(name):
    K, _ = lookup(name)
    assert cf_general(K, 30) == cf_quadratic(K).quotients(30)


def test_twentieth_convergent_is_close():
    K, _ = lookup("cbrt2")
    c = convergents(cf_general(K, 20))[-1]
    a = K.alpha(200)
    assert abs(a - c).certainly_lt(Fraction(1, c.denominator ** 2))
    # and it lies in a width 2^-40 enclosure of alpha
    lo, hi = a.lower - Fraction(1, 2**41), a.upper + Fraction(1, 2**41)
    assert lo <= c <= hi


def brute_trail(field_poly, root_approx, primes, q_max, dps=60):
    out, best = [], None
    with mpmath.workdps(dps):
        a = root_approx()
        for q in range(1, q_max + 1):
            x = q * a
            v = q * abs(x - mpmath.nint(x))
            for p in primes:
                k = q
                while k % p == 0:
                    k //= p
                    v /= p
            if best is None or v < best:
                best = v
                out.append(q)
    return out


@pytest.mark.parametrize("name,root,primes", [
    ("golden", lambda: (1 + mpmath.sqrt(5)) / 2, []),
    ("golden", lambda: (1 + mpmath.sqrt(5)) / 2, [2, 3]),
    ("sqrt2", lambda: mpmath.sqrt(2), [3]),
    ("cbrt2", lambda: mpmath.cbrt(2), [2, 5]),
])
def test_scan_against_brute_force(name, root, primes):
    K, _ = lookup(name)
    trail = [r.q for r in mixed_scan(K, primes, 3000) if r.is_record]
    assert trail == brute_trail(None, root, primes, 3000)
    assert trail[0] == 1


def test_first_value_is_distance_of_alpha():
    K, _ = lookup("golden")
    first = next(iter(mixed_scan(K, [], 10)))
    assert first.q == 1
    with mpmath.workdps(40):
        d = float(mpmath.mpf(2) - (1 + mpmath.sqrt(5)) / 2)
    assert abs(float(first.value) - d) < 1e-15


@pytest.mark.parametrize("parts", [2, 3, 7])
def test_partition_equals_sequential(parts):
    K, _ = lookup("golden")
    seq = [(r.q, r.is_record) for r in mixed_scan(K, [2, 3], 20000)]
    par = [(r.q, r.is_record) for r in mixed_scan(K, [2, 3], 20000, parts=parts)]
    assert seq == par


def test_worker_processes_match_sequential():
    K, _ = lookup("cbrt2")
    seq = list(mixed_scan(K, [2], 5000))
    par = list(mixed_scan(K, [2], 5000, parts=3, jobs=3))
    assert [(r.q, r.is_record) for r in seq] == [(r.q, r.is_record) for r in par]
    assert all(a.value.lower == b.value.lower and a.value.upper == b.value.upper for a, b in zip(seq, par))


def test_resume_continues_the_same_trail(tmp_path, monkeypatch):
    monkeypatch.setattr(mixed, "CHECKPOINT_EVERY", 500)
    K, _ = lookup("sqrt2")
    full = [(r.q, r.is_record) for r in mixed_scan(K, [3], 5000)]
    path = str(tmp_path / "resume.json")
    it = mixed_scan(K, [3], 5000, resume=path)
    for _ in it:
        if os.path.exists(path):
            break
    it.close()
    with open(path) as fh:
        saved = json.load(fh)
    assert 1 < saved["next_q"] <= 5001
    resumed = [(r.q, r.is_record) for r in mixed_scan(K, [3], 5000, resume=path)]
    assert resumed == full


def test_resume_rejects_other_scan(tmp_path, monkeypatch):
    monkeypatch.setattr(mixed, "CHECKPOINT_EVERY", 100)
    K, _ = lookup("sqrt2")
    path = str(tmp_path / "r.json")
    list(mixed_scan(K, [3], 300, resume=path))
    with pytest.raises(ValueError):
        list(mixed_scan(K, [2], 300, resume=path))


def test_scan_argument_checks():
    K, _ = lookup("sqrt2")
    with pytest.raises(ValueError):
        list(mixed_scan(K, [4], 10))
    with pytest.raises(ValueError):
        list(mixed_scan(K, [3, 3], 10))
    with pytest.raises(ValueError):
        list(mixed_scan(K, [], 10, q_min=20))


def brute_problem(alpha, primes, degree, H_max):
    """Every primitive irreducible P with a_d > 0, a_0 != 0, scored at its real roots within 1 of alpha."""
    best = None
    with mpmath.workdps(50):
        for coeffs in product(range(-H_max, H_max + 1), repeat=degree + 1):
            nz = [k for k, c in enumerate(coeffs) if c]
            if not nz or coeffs[0] == 0 or coeffs[nz[-1]] < 0 or nz[-1] == 0:
                continue
            P = IntPolynomial(coeffs)
            if mixed.content_and_primitive(P)[0] != 1 or certify_degree(P) is not True:
                continue
            H = P.height()
            w = mixed._norm_weight(P, primes)
            for r in mpmath.polyroots(list(reversed(P.coeffs)), maxsteps=200, extraprec=200):
                if abs(mpmath.im(r)) > mpmath.mpf(10) ** -30:
                    continue
                dist = abs(alpha - mpmath.re(r))
                if dist < 1:
                    v = dist * float(w) * H ** (degree + 1)
                    if best is None or v < best:
                        best = v
    return best


@pytest.mark.parametrize("primes", [[], [2], [2, 3]])
def test_problem_scan_against_brute_force(primes):
    K, _ = lookup("cbrt2")
    res = problem_scan(K, primes, 2, 3)
    with mpmath.workdps(50):
        ref = brute_problem(mpmath.cbrt(2), primes, 2, 3)
    assert res.best is not None
    assert abs(float(res.best.value) / float(ref) - 1) < 1e-9


def test_problem_scan_height_one():
    K, _ = lookup("golden")
    res = problem_scan(K, [], 1, 1)
    # X - 1 and X + 1 are the only candidates; only X - 1 has its root within 1 of alpha
    assert [r.P.coeffs for r in res.trail] == [(-1, 1)]


def test_problem_trail_is_decreasing():
    K, _ = lookup("sqrt2")
    res = problem_scan(K, [3], 2, 4)
    vals = [r.value for r in res.trail]
    for a, b in zip(vals, vals[1:]):
        assert b.certainly_lt(a)
