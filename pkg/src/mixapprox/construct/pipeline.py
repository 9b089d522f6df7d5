"""Construction of algebraic approximants of degree d with p-adically small roots.

For each exponent ``s`` a balanced unit ``eta`` (``0 < eta < 1``, congruent to
1 modulo ``p^(s+2)``) is found, ``P`` is read off the coordinates of
``eta * theta^d``, and the root of ``P`` next to ``alpha`` is captured with a
certified monotonicity argument.

Quantities that involve ``eta`` numerically are evaluated in log space:
``|P(alpha)| = sigma_0(eta) alpha^d`` and
``P'(alpha) = sum_i A_i sigma_i(eta)`` with
``A_i = sigma_i(alpha^d) sum_{k>=1} k alpha^(k-1) sigma_i(beta_k)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from ..exact.interval import ComplexBox, RealInterval
from ..exact.padic import PAdicAbs, padic_abs
from ..exact.poly import IntPolynomial, content_and_primitive
from ..exact.precision import DEFAULT_PREC, PREC_CEILING, Undecided
from ..field import FieldElement, NumberField
from ..units import (
    SearchFailed,
    SearchParams,
    UnitCandidate,
    UnitSystem,
    box_tolerances,
    default_M_bound,
    lemma3_search,
    normalize_for_p,
)
from .degree import certify_degree
from .newton import CoefficientProfile, NewtonPolygon, newton_polygon, padic_coefficient_profile


# -- polynomial from a unit -------------------------------------------------------------

def build_polynomial(field: NumberField, eta: FieldElement) -> Tuple[IntPolynomial, int]:
    """Coordinates of ``eta * theta^d`` as an integer polynomial, with the multiplier used.

    The multiplier is 1 for ``eta`` in ``Z[theta]``; otherwise coordinates are
    cleared by the square of the denominator of ``eta``.
    """
    target = eta * (field.theta ** field.d)
    mult = 1
    if not target.is_integral():
        mult = eta.denominator() ** 2
        target = target * mult
    coeffs = target.int_coords()
    if coeffs[field.d] == 0:
        raise ValueError("leading coordinate a_d vanishes; record rejected")
    return IntPolynomial(coeffs), mult


# -- derivative data --------------------------------------------------------------------

@dataclass
class DerivativeData:
    A: List[ComplexBox]
    sum_A: RealInterval  # sum over i = 1..d (real: conjugate terms pair up)
    tail: RealInterval  # sum over i = 2..d of |A_i|
    delta_ok: bool
    delta: Fraction


def derivative_coefficients(field: NumberField, prec: int = DEFAULT_PREC) -> List[ComplexBox]:
    """``A_i = sigma_i(alpha^d) * sum_{k=1}^{d} k alpha^(k-1) sigma_i(beta_k)`` for ``i = 0..d``."""
    d = field.d
    beta = field.dual_basis()
    alpha = field.alpha(prec + 16)
    out = []
    for i in range(field.n):
        s = ComplexBox.exact(0, prec)
        for k in range(1, d + 1):
            s = s + field.embed(beta[k], i, prec) * (alpha ** (k - 1) * k)
        out.append(field.embed(field.theta ** d, i, prec) * s)
    return out


def delta_condition(field: NumberField, delta: Fraction, prec: int = DEFAULT_PREC) -> DerivativeData:
    """Check ``delta * sum_{i>=2} |A_i| <= |sum_{i>=1} A_i| / 3``."""
    A = derivative_coefficients(field, prec)
    total = ComplexBox.exact(0, prec)
    for a in A[1:]:
        total = total + a
    if not total.im.contains_zero():
        raise ArithmeticError("sum of A_i over the non-identity embeddings is not real")
    tail = RealInterval.exact(0, prec)
    for a in A[2:]:
        tail = tail + a.abs()
    sA = total.re
    if sA.contains_zero():
        raise Undecided("sum of A_i not separated from zero")
    ok = (tail * Fraction(delta)).certainly_le(abs(sA) * Fraction(1, 3))
    return DerivativeData(A, sA, tail, ok, Fraction(delta))


def choose_delta(field: NumberField, start: Fraction = Fraction(1, 2), halvings: int = 10) -> DerivativeData:
    """Halve ``delta`` from ``start`` until the derivative condition holds."""
    delta = Fraction(start)
    for _ in range(halvings + 1):
        data = delta_condition(field, delta)
        if data.delta_ok:
            return data
        delta /= 2
    return data


def derivative_bound(field: NumberField, cand: UnitCandidate, data: DerivativeData, prec: int = DEFAULT_PREC):
    """``(A, lower_bound, delta_ok)`` with ``lower_bound = |sigma_1(eta)| |sum A| / 2``."""
    s1 = cand.embed(1, prec).abs()
    return data.A, s1 * abs(data.sum_A) * Fraction(1, 2), data.delta_ok


def derivative_at_alpha(field: NumberField, cand: UnitCandidate, data: DerivativeData, content: int,
                        prec: int = DEFAULT_PREC) -> RealInterval:
    """``P'(alpha)`` for ``P = (eta theta^d) / content`` from the ``A_i`` identity."""
    total = ComplexBox.exact(0, prec)
    for i, a in enumerate(data.A):
        total = total + a * cand.embed(i, prec)
    if not total.im.contains_zero():
        raise ArithmeticError("P'(alpha) enclosure is not real")
    return total.re / content


def value_at_alpha(field: NumberField, cand: UnitCandidate, content: int, prec: int = DEFAULT_PREC) -> RealInterval:
    """``P(alpha) = sigma_0(eta) alpha^d / content`` in log space."""
    alpha = field.alpha(prec + 16)
    a_abs = abs(alpha)
    log_val = cand.log_abs(0, prec) + a_abs.log() * field.d - RealInterval.exact(content, prec).log()
    val = log_val.exp()
    if alpha.sign() is None:
        raise Undecided("sign of alpha")
    return -val if (alpha.sign() < 0 and field.d % 2) else val


# -- root capture ----------------------------------------------------------------------

@dataclass
class Capture:
    ok: bool
    xi: Optional[RealInterval]
    err: Optional[RealInterval]
    reason: str = ""
    rho: Optional[Fraction] = None


def second_derivative_bound(P: IntPolynomial, alpha: RealInterval) -> RealInterval:
    """Bound for ``|P''|`` on ``[alpha - 1, alpha + 1]``."""
    R = abs(alpha) + 1
    acc = RealInterval.exact(0, alpha.prec)
    for k in range(2, P.degree + 1):
        if P[k]:
            acc = acc + R ** (k - 2) * RealInterval.exact(abs(P[k]) * k * (k - 1), alpha.prec)
    return acc


def capture_root(P: IntPolynomial, field: NumberField, p_alpha: Optional[RealInterval] = None,
                 dp_alpha: Optional[RealInterval] = None, prec: int = DEFAULT_PREC) -> Capture:
    """Certify a simple real root ``xi`` of ``P`` near ``alpha`` and enclose ``|alpha - xi|``.

    With ``L0 = |P'(alpha)|`` (lower end) and ``rho = 2 |P(alpha)| / L0``, if
    ``rho <= 1`` and ``rho * max|P''| <= L0 / 2`` then ``P'`` keeps its sign on
    ``[alpha - rho, alpha + rho]`` and ``P`` changes sign there, so the root is
    unique and ``alpha - xi = P(alpha) / P'(zeta)`` for some ``zeta`` in it.
    Without precomputed values, ``P(alpha)`` and ``P'(alpha)`` are evaluated
    directly.
    """
    if p_alpha is None or dp_alpha is None:
        work = prec + 2 * P.height().bit_length() * max(1, P.degree) + 64
        alpha = field.alpha(work)
        p_alpha = _horner(P, alpha)
        dp_alpha = _horner(P.derivative(), alpha)
    if p_alpha.sign() == 0:
        a = field.alpha(prec)
        return Capture(True, a, RealInterval.exact(0, prec), "alpha is a root", Fraction(0))
    if dp_alpha.contains_zero():
        return Capture(False, None, None, "P'(alpha) not separated from zero")
    L0 = abs(dp_alpha)
    rho_iv = abs(p_alpha) * 2 / L0
    rho = rho_iv.upper
    if rho > 1:
        return Capture(False, None, None, "predicted root interval wider than 1", rho)
    coarse_alpha = field.alpha(prec)
    K2 = second_derivative_bound(P, coarse_alpha)
    drift = K2 * rho
    if not drift.certainly_le(L0 * Fraction(1, 2)):
        return Capture(False, None, None, "derivative may vanish near alpha", rho)
    dp_range = dp_alpha.widen(drift.upper)
    err = abs(p_alpha) / abs(dp_range)
    # precision for xi: enough bits to resolve err with room to spare
    e_bits = -math.floor(math.log2(float(err.lower))) if float(err.lower) > 0 else _bits_from_log(err)
    work = max(prec, e_bits + prec)
    alpha = field.alpha(work).with_prec(work)
    xi = alpha - p_alpha.with_prec(work) / dp_range.with_prec(work)
    lo, hi = xi.lower, xi.upper
    s_lo, s_hi = _sign_at(P, lo), _sign_at(P, hi)
    if s_lo * s_hi > 0:
        return Capture(False, None, err, "no sign change across the captured interval", rho)
    return Capture(True, xi, err, "", rho)


def _bits_from_log(err: RealInterval) -> int:
    return -math.floor(float(err.lower.numerator.bit_length() - err.lower.denominator.bit_length())) + 2


def _sign_at(P: IntPolynomial, x: Fraction) -> int:
    d = x.denominator
    k = d.bit_length() - 1
    if d == 1 << k:
        return P.sign_at_dyadic(x.numerator, k)
    return P.sign_at(x)


def _horner(P: IntPolynomial, x: RealInterval) -> RealInterval:
    acc = RealInterval.exact(0, x.prec)
    for c in reversed(P.coeffs):
        acc = acc * x + c
    return acc


# -- records ---------------------------------------------------------------------------

@dataclass
class ApproxRecord:
    s: int
    p: int
    status: str  # "accepted" or "rejected"
    reasons: List[str] = field(default_factory=list)
    delta: Optional[Fraction] = None
    mu: Tuple[int, ...] = ()
    exponents: Tuple[int, ...] = ()
    search_method: str = ""
    eta_coords: Optional[FieldElement] = None
    multiplier: int = 1
    content: int = 1  # signed: multiplier * eta * theta^d == content * P
    P: Optional[IntPolynomial] = None
    H: int = 0
    xi: Optional[RealInterval] = None
    err: Optional[RealInterval] = None
    c1: Optional[RealInterval] = None
    root_vals: List[Optional[Fraction]] = field(default_factory=list)
    newton: Optional[NewtonPolygon] = None
    u: Optional[PAdicAbs] = None
    c2: Optional[RealInterval] = None
    norm_p: Optional[PAdicAbs] = None
    c3: Optional[RealInterval] = None
    degree_certified: Optional[bool] = None
    profile: Optional[CoefficientProfile] = None
    p_alpha: Optional[RealInterval] = None
    dp_alpha: Optional[RealInterval] = None
    dp_lower_bound: Optional[RealInterval] = None
    log_N: Optional[RealInterval] = None
    balance: Optional[RealInterval] = None  # max_j |sigma_j(eta)/sigma_1(eta) - 1|

    @property
    def accepted(self) -> bool:
        return self.status == "accepted"

    @property
    def d(self) -> int:
        return self.P.degree if self.P is not None else 0

    def __repr__(self) -> str:
        # heights run to hundreds of thousands of digits; show their size only
        bits = self.H.bit_length()
        return (f"ApproxRecord(s={self.s}, p={self.p}, status={self.status!r}, d={self.d}, "
                f"H_bits={bits}, reasons={self.reasons!r})")


def log_3H(H: int, prec: int = DEFAULT_PREC) -> RealInterval:
    return RealInterval.exact(3 * H, prec).log()


def padic_abs_interval(x: PAdicAbs, prec: int = DEFAULT_PREC) -> RealInterval:
    if x.exponent is None:
        return RealInterval.exact(0, prec)
    if x.exponent.denominator == 1:
        return RealInterval.exact(x.as_fraction(), prec)
    return (RealInterval.exact(x.p, prec).log() * x.exponent).exp()


def theorem1_quantities(H: int, d: int, r: int, err: RealInterval, u: PAdicAbs, norm_p: PAdicAbs,
                        prec: int = DEFAULT_PREC):
    """``c1 = err H^(d+1)``, ``c2 = u (log 3H)^(1/(rd))``, ``c3 = err min(norm_p,1) H^(d+1) (log 3H)^(1/r)``."""
    Hd = RealInterval.exact(H, prec) ** (d + 1)
    L = log_3H(H, prec)
    c1 = err * Hd
    c2 = padic_abs_interval(u, prec) * (L.log() * Fraction(1, r * d)).exp()
    c3 = c1 * padic_abs_interval(norm_p.min_one(), prec) * (L.log() * Fraction(1, r)).exp()
    return c1, c2, c3


def balance_interval(cand: UnitCandidate, d: int, prec: int = DEFAULT_PREC) -> Optional[RealInterval]:
    """``max_{2<=j<=d} |sigma_j(eta)/sigma_1(eta) - 1|`` (``None`` when ``d = 1``)."""
    if d < 2:
        return None
    s1 = cand.embed(1, prec)
    best = None
    for j in range(2, d + 1):
        q = cand.embed(j, prec) / s1 - 1
        a = q.abs()
        if best is None:
            best = a
        else:
            best = RealInterval.from_bounds(max(best.lower, a.lower), max(best.upper, a.upper), prec)
    return best


def record_from_candidate(field: NumberField, cand: UnitCandidate, data: DerivativeData, s: int, p: int,
                          prec: int = DEFAULT_PREC, check_profile: bool = True) -> ApproxRecord:
    """Run every stage after the unit search and classify the result."""
    rec = ApproxRecord(s=s, p=p, status="rejected", delta=data.delta, mu=cand.mu, exponents=cand.exponents,
                       search_method=cand.method)
    d, r = field.d, field.unit_rank
    eta = cand.element()
    rec.eta_coords = eta
    rec.log_N = -cand.log_abs(0, prec)
    try:
        P0, mult = build_polynomial(field, eta)
    except ValueError as exc:
        rec.reasons.append(str(exc))
        return rec
    rec.multiplier = mult
    content, P = content_and_primitive(P0)
    if P0.leading < 0:
        content = -content  # keeps eta * theta^d * multiplier == content * P
    rec.content, rec.P, rec.H = content, P, P.height()
    rec.profile = padic_coefficient_profile(P, p, s)
    if check_profile and not rec.profile.ok:
        rec.reasons.append("p-adic coefficient profile violated")
    poly = newton_polygon(P, p)
    rec.newton = poly
    rec.root_vals = poly.root_valuations()
    rec.u = poly.max_root_abs()
    rec.norm_p = padic_abs(Fraction(P[0], P.leading), p) if P[0] else PAdicAbs(p, None)
    # min{|Norm xi|_p, 1} >= |a_0|_p whenever a_d is an integer
    if P[0] and not (padic_abs(P[0], p) <= rec.norm_p.min_one()):
        rec.reasons.append("norm lower bound by |a_0|_p failed")
    rec.balance = balance_interval(cand, d, prec)
    if rec.balance is not None and not rec.balance.certainly_le(data.delta):
        rec.reasons.append("balanced-conjugate bound not certified")
    total_mult = Fraction(mult, content)
    rec.p_alpha = value_at_alpha(field, cand, 1, prec) * total_mult
    rec.dp_alpha = derivative_at_alpha(field, cand, data, 1, prec) * total_mult
    _, lower, _ = derivative_bound(field, cand, data, prec)
    rec.dp_lower_bound = lower * total_mult
    cap = capture_root(P, field, rec.p_alpha, rec.dp_alpha, prec)
    if not cap.ok:
        rec.reasons.append(cap.reason)
        rec.err = cap.err
        return rec
    rec.xi, rec.err = cap.xi, cap.err
    rec.c1, rec.c2, rec.c3 = theorem1_quantities(rec.H, d, r, rec.err, rec.u, rec.norm_p, prec)
    rec.degree_certified = certify_degree(P) is True if P.degree == d else False
    if not rec.err.certainly_lt(1):
        rec.reasons.append("|alpha - xi| not below 1")
    if not rec.degree_certified:
        rec.reasons.append("degree of xi not certified")
    if not data.delta_ok:
        rec.reasons.append("derivative condition fails for every delta tried")
    if not rec.reasons:
        rec.status = "accepted"
    return rec


def theorem1_pipeline(field: NumberField, units: UnitSystem, p: int, s_range: Iterable[int],
                      delta_start: Fraction = Fraction(1, 2), max_halvings: int = 10, jobs: int = 1,
                      prec: int = DEFAULT_PREC, M_bound: Optional[int] = None) -> Iterator[ApproxRecord]:
    """Yield one record per ``s`` (accepted or diagnostic), in increasing ``s``.

    Accepted records have strictly increasing heights; a record whose height does
    not exceed the previous accepted one is demoted to a diagnostic.
    """
    norm = units if units.normalized_for == p else normalize_for_p(units, p)
    data = choose_delta(field, Fraction(delta_start), max_halvings)
    C1, C2 = box_tolerances(field, data.delta)
    s_list = sorted(set(s_range))

    def stage(s: int) -> ApproxRecord:
        M = M_bound or default_M_bound(norm, p, s, C1, C2)
        try:
            cand = lemma3_search(norm, SearchParams(s, data.delta, C1, C2, M), p=p, prec=prec)
        except (SearchFailed, Undecided) as exc:
            return ApproxRecord(s=s, p=p, status="rejected", reasons=[f"unit search: {exc}"], delta=data.delta)
        try:
            return record_from_candidate(field, cand, data, s, p, prec)
        except Undecided as exc:
            return ApproxRecord(s=s, p=p, status="rejected", reasons=[f"undecided: {exc}"], delta=data.delta,
                                mu=cand.mu)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(stage, s_list))
    else:
        records = (stage(s) for s in s_list)
    last_H = 0
    for rec in records:
        if rec.accepted:
            if rec.H <= last_H:
                rec.status = "rejected"
                rec.reasons.append("height does not increase")
            else:
                last_H = rec.H
        yield rec
