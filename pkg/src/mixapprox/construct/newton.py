"""Newton polygons over Q_p and the root-size inequalities they decide exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from ..exact.padic import PAdicAbs, padic_abs, vp
from ..exact.poly import IntPolynomial


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    vertices: Tuple[Tuple[int, int], ...]
    slopes: Tuple[Tuple[Fraction, int], ...]  # (slope, horizontal length)
    zero_roots: int = 0  # roots at 0 (infinite valuation), from vanishing low coefficients

    def root_valuations(self) -> List[Optional[Fraction]]:
        """Valuations of all roots in C_p with multiplicity; ``None`` stands for a zero root."""
        vals: List[Optional[Fraction]] = [None] * self.zero_roots
        for slope, length in self.slopes:
            vals.extend([-slope] * length)
        return vals

    def root_abs(self) -> List[PAdicAbs]:
        return [PAdicAbs(self.p, None if v is None else -v) for v in self.root_valuations()]

    def max_root_abs(self) -> PAdicAbs:
        vals = self.root_abs()
        if not vals:
            raise ValueError("constant polynomial has no roots")
        best = vals[0]
        for v in vals[1:]:
            if v > best:
                best = v
        return best

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "vertices": [list(v) for v in self.vertices],
            "slopes": [[f"{s.numerator}/{s.denominator}", n] for s, n in self.slopes],
            "zero_roots": self.zero_roots,
        }


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(P: IntPolynomial, p: int) -> NewtonPolygon:
    """Lower convex hull of ``(k, v_p(a_k))`` over the nonzero coefficients.

    >>> newton_polygon(IntPolynomial([3, 3, 1]), 3).root_valuations()
    [Fraction(1, 2), Fraction(1, 2)]
    """
    if P.is_zero:
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(k, vp(a, p)) for k, a in enumerate(P.coeffs) if a]
    zero_roots = pts[0][0]
    hull: List[Tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    slopes = tuple(
        (Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(p, tuple(hull), slopes, zero_roots)


@dataclass(frozen=True)
class RootBound:
    """The real number ``c ** (1/d)`` kept exact for comparisons."""

    c: Fraction
    d: int

    def __float__(self) -> float:
        return float(self.c) ** (1.0 / self.d)

    def ge_abs(self, x: PAdicAbs) -> bool:
        """``x <= c^(1/d)``, i.e. ``x^d <= c``."""
        if x.exponent is None:
            return True
        return PAdicAbs(x.p, x.exponent * self.d).le_rational(self.c)


@dataclass(frozen=True)
class Lemma4Result:
    roots_within: bool  # every root has |xi|_p <= c
    coeffs_within: bool  # |a_k|_p <= c |a_d|_p for all k < d
    forward: bool  # roots_within implies coeffs_within
    converse_bound: RootBound
    converse: bool  # coeffs_within implies every |xi|_p <= c^(1/d)


def lemma4_check(P: IntPolynomial, p: int, c) -> Lemma4Result:
    """Check both directions of the root/coefficient inequality for ``P`` and ``c`` in ``[0, 1]``."""
    c = Fraction(c)
    if not 0 <= c <= 1:
        raise ValueError("c must lie in [0, 1]")
    d = P.degree
    if d < 1:
        raise ValueError("need a polynomial of positive degree")
    poly = newton_polygon(P, p)
    roots = poly.root_abs()
    roots_within = all(r.le_rational(c) for r in roots)
    lead = padic_abs(P.leading, p).as_fraction()
    coeffs_within = all(padic_abs(a, p).as_fraction() <= c * lead for a in P.coeffs[:-1])
    bound = RootBound(c, d)
    converse_ok = (not coeffs_within) or all(bound.ge_abs(r) for r in roots)
    return Lemma4Result(roots_within, coeffs_within, (not roots_within) or coeffs_within, bound, converse_ok)


@dataclass(frozen=True)
class CoefficientProfile:
    p: int
    s: int
    valuations: Tuple[Optional[int], ...]  # None for a zero coefficient
    leading_valuation: int
    min_lower_valuation: Optional[int]
    ok: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "valuations": list(self.valuations),
            "leading_valuation": self.leading_valuation,
            "min_lower_valuation": self.min_lower_valuation,
            "ok": self.ok,
        }


def padic_coefficient_profile(P: IntPolynomial, p: int, s: int) -> CoefficientProfile:
    """Exact valuations of the coefficients; ``ok`` when ``v_p(a_k) >= s+2`` for ``k < d``
    and the leading coefficient is a p-adic unit."""
    vals = tuple(None if a == 0 else vp(a, p) for a in P.coeffs)
    lower = [v for v in vals[:-1] if v is not None]
    lo = min(lower) if lower else None
    lead = vals[-1]
    ok = lead == 0 and (lo is None or lo >= s + 2)
    return CoefficientProfile(p, s, vals, lead, lo, ok)
