"""Machine-readable forms of records: exact rationals as ``"num/den"``, interval
endpoints as dyadic ``"m*2^e"`` strings, nothing rounded to decimals."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional

from mpmath.libmp import libmpf

from .construct.pipeline import ApproxRecord
from .construct.newton import newton_polygon
from .exact.interval import RealInterval
from .exact.padic import PAdicAbs
from .exact.poly import IntPolynomial
from .exact.textint import int_to_str, str_to_int
from .scan.mixed import ProblemScanResult

_DYADIC = re.compile(r"^(-?\d+)\*2\^(-?\d+)$")


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{int_to_str(x.numerator)}/{int_to_str(x.denominator)}"


def parse_frac(s: str) -> Fraction:
    if "/" in s:
        a, b = s.split("/")
        return Fraction(str_to_int(a), str_to_int(b))
    return Fraction(s)


def parse_dyadic(s: str) -> tuple:
    m = _DYADIC.match(s)
    if not m:
        raise ValueError(f"not a dyadic string: {s!r}")
    return libmpf.from_man_exp(str_to_int(m.group(1)), int(m.group(2)))


def interval_from_json(pair) -> RealInterval:
    a, b = (parse_dyadic(x) for x in pair)
    return RealInterval(a, b)


def _iv(x: Optional[RealInterval]) -> List[str]:
    return x.to_json() if x is not None else ["", ""]


# -- Theorem 1 records --------------------------------------------------------------------

def construct_csv_header(d: int) -> List[str]:
    return (["s", "H"] + [f"a_{k}" for k in range(d + 1)]
            + ["err_lo", "err_hi", "c1_lo", "c1_hi", "c2_lo", "c2_hi", "c3_lo", "c3_hi",
               "norm_p_num", "norm_p_den", "degree_certified", "status"])


def construct_csv_row(rec: ApproxRecord, d: int) -> List[str]:
    coeffs = list(rec.P.coeffs) if rec.P is not None else []
    coeffs += [0] * (d + 1 - len(coeffs))
    row = [str(rec.s), int_to_str(rec.H) if rec.P is not None else ""]
    row += [int_to_str(c) for c in coeffs] if rec.P is not None else [""] * (d + 1)
    for iv in (rec.err, rec.c1, rec.c2, rec.c3):
        row += _iv(iv)
    if rec.norm_p is not None and rec.norm_p.exponent is not None:
        n = rec.norm_p.as_fraction()
        row += [int_to_str(n.numerator), int_to_str(n.denominator)]
    elif rec.norm_p is not None:
        row += ["0", "1"]
    else:
        row += ["", ""]
    row.append("" if rec.degree_certified is None else ("1" if rec.degree_certified else "0"))
    row.append(rec.status)
    return row


def record_to_json(rec: ApproxRecord) -> dict:
    return {
        "s": rec.s,
        "p": rec.p,
        "status": rec.status,
        "reasons": list(rec.reasons),
        "delta": frac_str(rec.delta) if rec.delta is not None else None,
        "mu": list(rec.mu),
        "exponents": list(rec.exponents),
        "search_method": rec.search_method,
        "multiplier": int_to_str(rec.multiplier),
        "content": int_to_str(rec.content),
        "P": [int_to_str(c) for c in rec.P.coeffs] if rec.P is not None else None,
        "H": int_to_str(rec.H),
        "xi": _opt(rec.xi),
        "err": _opt(rec.err),
        "c1": _opt(rec.c1),
        "c2": _opt(rec.c2),
        "c3": _opt(rec.c3),
        "root_valuations": [None if v is None else frac_str(v) for v in rec.root_vals],
        "newton_polygon": rec.newton.to_json() if rec.newton is not None else None,
        "u": rec.u.to_json() if rec.u is not None else None,
        "norm_p": rec.norm_p.to_json() if rec.norm_p is not None else None,
        "degree_certified": rec.degree_certified,
        "coefficient_profile": rec.profile.to_json() if rec.profile is not None else None,
        "P_at_alpha": _opt(rec.p_alpha),
        "dP_at_alpha": _opt(rec.dp_alpha),
        "dP_lower_bound": _opt(rec.dp_lower_bound),
        "log_N": _opt(rec.log_N),
        "balance": _opt(rec.balance),
    }


def _opt(iv: Optional[RealInterval]):
    return iv.to_json() if iv is not None else None


def _padic_from_json(obj) -> Optional[PAdicAbs]:
    if obj is None:
        return None
    e = obj["exponent"]
    return PAdicAbs(obj["p"], None if e is None else parse_frac(e))


def record_from_json(obj: dict) -> ApproxRecord:
    """Rebuild the parts of a record that downstream measurements use."""
    get = lambda k: interval_from_json(obj[k]) if obj.get(k) is not None else None  # noqa: E731
    rec = ApproxRecord(s=obj["s"], p=obj["p"], status=obj["status"], reasons=list(obj.get("reasons", [])))
    rec.mu = tuple(obj.get("mu", ()))
    rec.exponents = tuple(obj.get("exponents", ()))
    rec.delta = parse_frac(obj["delta"]) if obj.get("delta") else None
    if obj.get("P") is not None:
        rec.P = IntPolynomial(str_to_int(c) for c in obj["P"])
        rec.H = rec.P.height()
        rec.newton = newton_polygon(rec.P, rec.p)
        rec.root_vals = rec.newton.root_valuations()
    rec.u = _padic_from_json(obj.get("u"))
    rec.norm_p = _padic_from_json(obj.get("norm_p"))
    rec.xi, rec.err = get("xi"), get("err")
    rec.c1, rec.c2, rec.c3 = get("c1"), get("c2"), get("c3")
    rec.p_alpha, rec.dp_alpha = get("P_at_alpha"), get("dP_at_alpha")
    rec.degree_certified = obj.get("degree_certified")
    return rec


# -- problem scans ----------------------------------------------------------------------

def problem_scan_to_json(res: ProblemScanResult) -> dict:
    return {
        "degree": res.degree,
        "H_max": res.H_max,
        "primes": res.primes,
        "trail": [
            {"P": [int_to_str(c) for c in r.P.coeffs], "xi": r.xi.to_json(), "value": r.value.to_json()}
            for r in res.trail
        ],
        "best": None if res.best is None else [int_to_str(c) for c in res.best.P.coeffs],
        "note": "record trail of a finite search; not a verification of the open problem",
    }
