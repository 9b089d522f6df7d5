"""Continued fractions of real algebraic numbers.

Quadratic irrationals use the exact ``(P + sqrt(D)) / Q`` reduction loop; other
numbers are expanded from interval enclosures, each quotient certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Tuple

from ..exact.interval import RealInterval
from ..exact.precision import PREC_CEILING, PrecisionCeilingError, escalation
from ..field import NumberField


@dataclass(frozen=True)
class QuadraticCF:
    preperiod: Tuple[int, ...]
    period: Tuple[int, ...]

    def quotients(self, count: int) -> List[int]:
        out = list(self.preperiod[:count])
        k = 0
        while len(out) < count:
            out.append(self.period[k % len(self.period)])
            k += 1
        return out

    def to_json(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}


def convergents(quotients: List[int]) -> List[Fraction]:
    """``p_n / q_n`` for each prefix of ``quotients``."""
    out = []
    p0, q0, p1, q1 = 1, 0, quotients[0], 1
    out.append(Fraction(p1, q1))
    for a in quotients[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def _floor_quadratic(P: int, D: int, Q: int, r: int) -> int:
    """``floor((P + sqrt(D)) / Q)`` for non-square ``D``, with ``r = isqrt(D)``."""
    if Q > 0:
        return (P + r) // Q
    return -((P + r) // -Q) - 1


def cf_quadratic(field: NumberField) -> QuadraticCF:
    """Periodic expansion of the distinguished root of a monic quadratic ``X^2 + bX + c``."""
    if field.n != 2:
        raise ValueError("cf_quadratic needs a quadratic field")
    c, b, _ = field.min_poly.coeffs
    D = b * b - 4 * c
    r = isqrt(D)
    if r * r == D:
        raise ValueError("rational input has a finite continued fraction")
    # the two roots (-b + sqrt(D)) / 2 and (b + sqrt(D)) / -2 lie on either side of -b/2
    P, Q = (-b, 2) if field.alpha().certainly_gt(Fraction(-b, 2)) else (b, -2)
    seen = {}
    quotients: List[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(quotients)
        a = _floor_quadratic(P, D, Q, r)
        quotients.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return QuadraticCF(tuple(quotients[:start]), tuple(quotients[start:]))


def cf_general(field: NumberField, count: int, prec: int = 128, ceiling: int = PREC_CEILING) -> List[int]:
    """The first ``count`` partial quotients of ``alpha``, each certified.

    Each convergent is also checked against ``|alpha - p_n/q_n| < 1/q_n^2``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    for pr in escalation(max(prec, 4 * count), ceiling):
        x = field.alpha(pr + 16).with_prec(pr)
        out: List[int] = []
        for _ in range(count):
            a = x.floor_if_decided()
            if a is None:
                break
            out.append(a)
            frac = x - a
            if len(out) < count:
                if frac.contains_zero():
                    break
                x = 1 / frac
        if len(out) == count:
            alpha = field.alpha(pr)
            for c in convergents(out):
                if not abs(alpha - c).certainly_lt(Fraction(1, c.denominator**2)):
                    raise ArithmeticError("convergent violates the approximation bound")
            return out
    raise PrecisionCeilingError("partial quotient not decided at the precision ceiling")
