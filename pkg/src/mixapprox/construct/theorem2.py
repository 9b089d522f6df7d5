"""Measurement harness for the converse lower bound.

Two things are measured on approximation records: the decomposition
``P(alpha) = gamma * eta_m`` into a Peck unit times an element of a finite set,
and a least-squares exponent ``kappa`` with ``u >= (log 3H)^(-kappa)``, where
``u`` is the largest p-adic absolute value of a root of ``P``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..exact.interval import RealInterval
from ..exact.padic import PAdicAbs
from ..exact.poly import IntPolynomial
from ..exact.precision import DEFAULT_PREC, Undecided
from ..exact.textint import int_to_str
from ..field import FieldElement, NumberField
from ..units import PeckTerm, UnitCandidate, UnitSystem, peck_sequence, positive_units
from .pipeline import ApproxRecord, choose_delta, record_from_candidate

DEFAULT_HOUSE_CEILING = Fraction(100)


# -- kappa ------------------------------------------------------------------------------

@dataclass
class KappaFit:
    kappa: float
    tol: float
    points: List[Tuple[float, float]]  # (log log 3H, log 1/u) for the records used
    residuals: List[float]
    obeys_floor: List[bool]
    degenerate: bool = False
    skipped: int = 0  # records with u = 0 or u >= 1

    @property
    def all_obey(self) -> bool:
        return all(self.obeys_floor)

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa,
            "tol": self.tol,
            "points": [list(p) for p in self.points],
            "residuals": self.residuals,
            "obeys_floor": self.obeys_floor,
            "degenerate": self.degenerate,
            "skipped": self.skipped,
        }


def _log_abs_padic(u: PAdicAbs) -> float:
    return float(u.exponent) * math.log(u.p)


def kappa_fit(points: Iterable[Tuple[int, PAdicAbs]], tol: float = 0.05) -> KappaFit:
    """Fit ``log(1/u) = kappa * log log 3H`` through the origin.

    ``points`` are ``(H, u)`` pairs.  Only ``0 < u < 1`` carries information; if
    nothing is left the fit is degenerate with ``kappa = 0``.  Each used point is
    checked against the floor ``u >= (log 3H)^(-kappa (1 + tol))``.
    """
    xs, ys, skipped = [], [], 0
    for H, u in points:
        if u.exponent is None or u.exponent >= 0:
            skipped += 1
            continue
        xs.append(math.log(math.log(3) + math.log(H)))
        ys.append(-_log_abs_padic(u))
    if not xs:
        return KappaFit(0.0, tol, [], [], [], degenerate=True, skipped=skipped)
    kappa = math.fsum(x * y for x, y in zip(xs, ys)) / math.fsum(x * x for x in xs)
    residuals = [y - kappa * x for x, y in zip(xs, ys)]
    obeys = [y <= kappa * (1 + tol) * x for x, y in zip(xs, ys)]
    return KappaFit(kappa, tol, list(zip(xs, ys)), residuals, obeys, skipped=skipped)


# -- gamma set --------------------------------------------------------------------------

@dataclass
class GammaEntry:
    index: int
    H: int
    m: int
    peck_mu: Tuple[int, ...]
    gamma: FieldElement
    house: RealInterval  # house of D * gamma
    denominator: int
    within_ceiling: bool
    new: bool


@dataclass
class Theorem2Report:
    p: int
    lambda_used: Fraction
    lambda_prime: RealInterval
    house_ceiling: Fraction
    points: List[Tuple[int, PAdicAbs]]
    kappa: KappaFit
    entries: List[GammaEntry] = field(default_factory=list)
    gamma_set: List[FieldElement] = field(default_factory=list)
    approx_ok: List[bool] = field(default_factory=list)  # |alpha - xi| <= lambda H^(-d-1)
    value_ok: List[bool] = field(default_factory=list)  # |P(alpha)| <= lambda' H^(-d)
    violations: List[str] = field(default_factory=list)

    def stalled(self, window: int = 25) -> bool:
        """No new set element among the last ``window`` entries."""
        return len(self.entries) >= window and not any(e.new for e in self.entries[-window:])

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "lambda": f"{self.lambda_used.numerator}/{self.lambda_used.denominator}",
            "lambda_prime": self.lambda_prime.to_json(),
            "house_ceiling": f"{self.house_ceiling.numerator}/{self.house_ceiling.denominator}",
            "records": [{"H": int_to_str(H), "u": u.to_json()} for H, u in self.points],
            "kappa_fit": self.kappa.to_json(),
            "gamma_set": [g.to_json() for g in self.gamma_set],
            "entries": [
                {
                    "index": e.index,
                    "m": e.m,
                    "peck_mu": list(e.peck_mu),
                    "gamma": e.gamma.to_json(),
                    "house": e.house.to_json(),
                    "denominator": e.denominator,
                    "within_ceiling": e.within_ceiling,
                    "new": e.new,
                }
                for e in self.entries
            ],
            "approx_ok": self.approx_ok,
            "value_ok": self.value_ok,
            "violations": self.violations,
            "stalled": self.stalled(),
        }


def lambda_prime(field: NumberField, lam: Fraction, prec: int = DEFAULT_PREC) -> RealInterval:
    """``lambda * sum_{k=1}^{d} k (|alpha| + 1)^(k-1)``."""
    R = abs(field.alpha(prec)) + 1
    acc = RealInterval.exact(0, prec)
    for k in range(1, field.d + 1):
        acc = acc + R ** (k - 1) * k
    return acc * Fraction(lam)


def nearest_log(H: int, prec: int = DEFAULT_PREC) -> int:
    """``round(log H)`` with ties going up."""
    v = RealInterval.exact(H, prec).log() + Fraction(1, 2)
    m = v.floor_if_decided()
    if m is None:
        raise Undecided("log H sits on a half-integer")
    return m


def value_as_element(field: NumberField, P: IntPolynomial) -> FieldElement:
    """``P(alpha)`` as an exact element of the field."""
    coords = list(P.coeffs) + [0] * (field.n - len(P.coeffs))
    return field.element(coords)


def gamma_decomposition(field: NumberField, records: Sequence[ApproxRecord], peck_units: UnitSystem,
                        lam: Fraction, house_ceiling: Fraction = DEFAULT_HOUSE_CEILING, tol: float = 0.05,
                        prec: int = DEFAULT_PREC) -> Theorem2Report:
    """Split each ``P(alpha)`` as ``gamma * eta_m`` with ``m = round(log H)``.

    ``peck_units`` must be positive at the distinguished embedding.  Records
    without a polynomial are skipped.
    """
    lam = Fraction(lam)
    lp = lambda_prime(field, lam, prec)
    recs = [r for r in records if r.P is not None]
    report = Theorem2Report(
        p=recs[0].p if recs else 0,
        lambda_used=lam,
        lambda_prime=lp,
        house_ceiling=Fraction(house_ceiling),
        points=[(r.H, r.u) for r in recs if r.u is not None],
        kappa=kappa_fit(((r.H, r.u) for r in recs if r.u is not None), tol),
    )
    d = field.d
    peck_cache: Dict[int, PeckTerm] = {}
    seen: Dict[FieldElement, int] = {}
    for idx, rec in enumerate(recs):
        H = RealInterval.exact(rec.H, prec)
        if rec.err is not None:
            report.approx_ok.append(rec.err.certainly_le(H ** (-(d + 1)) * lam))
        else:
            report.approx_ok.append(False)
        value = value_as_element(field, rec.P)
        pa = abs(field.embed_real(value, 0, prec)) if rec.p_alpha is None else abs(rec.p_alpha)
        report.value_ok.append(pa.certainly_le(lp * H ** (-d)))
        m = nearest_log(rec.H, prec)
        if m not in peck_cache:
            peck_cache[m] = peck_sequence(peck_units, m, prec)
        term = peck_cache[m]
        gamma = value / term.eta
        den = gamma.denominator()
        house = field.house(gamma * den, prec)
        within = house.certainly_le(report.house_ceiling)
        if not within:
            report.violations.append(f"record {idx}: house of D*gamma not below {report.house_ceiling}")
        new = gamma not in seen
        if new:
            seen[gamma] = idx
            report.gamma_set.append(gamma)
        report.entries.append(GammaEntry(idx, rec.H, m, term.mu, gamma, house, den, within, new))
    return report


# -- a record family from plain unit powers -----------------------------------------------

def unit_power_records(field: NumberField, units: UnitSystem, p: int, powers: Iterable[int],
                       prec: int = DEFAULT_PREC) -> List[ApproxRecord]:
    """Records from ``eta = eps^(-k)`` (inverted when needed so that ``0 < eta < 1``).

    Uses the first unit of ``units``.  No p-adic congruence is imposed, so the
    coefficient profile is reported but not enforced.
    """
    data = choose_delta(field)
    pos = positive_units(units)
    out = []
    for k in powers:
        exps = [0] * pos.r
        exps[0] = -k
        l0 = pos.combo_log_abs(exps, 0, prec)
        sgn = l0.sign()
        if sgn is None or sgn == 0:
            raise Undecided("cannot decide whether eta exceeds 1")
        inverted = sgn > 0
        if inverted:
            exps = [-e for e in exps]
        cand = UnitCandidate(pos, p, 0, (k,), tuple(exps), inverted, None, None, [], [], "unit-power")
        out.append(record_from_candidate(field, cand, data, 0, p, prec, check_profile=False))
    return out
