"""Brute-force scans of ``q ||q alpha|| prod |q|_p`` and of small-degree approximants.

``alpha`` is held as a fixed-point enclosure ``[A_lo, A_hi] / 2^W``, so each step
of ``mixed_scan`` is a handful of integer operations.  A step whose enclosure
is too wide to decide a comparison is redone with doubled ``W``; past the
precision ceiling it is reported with ``undecided = True``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..exact.interval import RealInterval
from ..exact.padic import is_prime, padic_abs
from ..exact.poly import IntPolynomial, content_and_primitive
from ..exact.precision import DEFAULT_PREC, PREC_CEILING
from ..exact.roots import isolate_real_roots, refine_root
from ..field import NumberField
from ..construct.degree import certify_degree

CHECKPOINT_EVERY = 1 << 20


@dataclass(frozen=True)
class ScanRecord:
    q: int
    value: RealInterval
    is_record: bool
    undecided: bool = False

    def csv_row(self) -> List[str]:
        lo, hi = self.value.to_json()
        return [str(self.q), lo, hi, "1" if self.is_record else "0"]


# -- fixed-point evaluation ------------------------------------------------------------

class _FixedAlpha:
    """``alpha`` enclosed in ``[lo, hi] / 2^W`` for a family of precisions."""

    def __init__(self, field: NumberField):
        self.field = field
        self._cache: Dict[int, Tuple[int, int]] = {}

    def bounds(self, W: int) -> Tuple[int, int]:
        if W not in self._cache:
            a = self.field.alpha(W + 8)
            lo, hi = a.lower, a.upper
            self._cache[W] = ((lo.numerator << W) // lo.denominator, -((-hi.numerator << W) // hi.denominator))
        return self._cache[W]


def _weight(q: int, primes: Sequence[int]) -> int:
    """``1 / prod |q|_p`` as an integer."""
    w = 1
    for p in primes:
        while q % p == 0:
            q //= p
            w *= p
    return w


def _dist_bounds(q: int, Alo: int, Ahi: int, W: int) -> Optional[Tuple[int, int]]:
    """Bounds for ``||q alpha|| * 2^W``, or ``None`` when the enclosure meets an integer or a half-integer."""
    one = 1 << W
    half = one >> 1
    tl = q * Alo
    f = tl & (one - 1)
    g = f + q * (Ahi - Alo)
    if g <= half and f > 0:
        return f, g
    if f >= half and g < one:
        return one - g, one - f
    return None


@dataclass
class _Value:
    """``q * [dl, dh] / (2^W * weight)``."""

    q: int
    dl: int
    dh: int
    W: int
    weight: int

    def interval(self) -> RealInterval:
        den = self.weight << self.W
        return RealInterval.from_bounds(Fraction(self.q * self.dl, den), Fraction(self.q * self.dh, den), DEFAULT_PREC)

    def lt(self, other: "_Value") -> bool:
        """Certainly smaller than ``other``."""
        return self.q * self.dh * other.weight << other.W < other.q * other.dl * self.weight << self.W

    def ge(self, other: "_Value") -> bool:
        """Certainly not smaller than ``other``."""
        return self.q * self.dl * other.weight << other.W >= other.q * other.dh * self.weight << self.W


def _value(fixed: _FixedAlpha, q: int, primes: Sequence[int], W: int, ceiling: int) -> Optional[_Value]:
    while W <= ceiling:
        Alo, Ahi = fixed.bounds(W)
        db = _dist_bounds(q, Alo, Ahi, W)
        if db is not None:
            return _Value(q, db[0], db[1], W, _weight(q, primes))
        W *= 2
    return None


def _check_primes(primes: Sequence[int]) -> List[int]:
    primes = list(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    return primes


def _base_width(q_max: int) -> int:
    return max(64, 2 * q_max.bit_length() + 64)


def scan_candidates(field: NumberField, primes: Sequence[int], q_lo: int, q_hi: int,
                    ceiling: int = PREC_CEILING) -> List[ScanRecord]:
    """Records of the sub-range ``[q_lo, q_hi]`` relative to its own running minimum.

    Any record of the whole scan is a record of the part that contains it, so
    the reducer only needs these.
    """
    primes = _check_primes(primes)
    out: List[ScanRecord] = []
    state = _ScanState(field, primes, _base_width(q_hi), ceiling)
    for rec in state.run(q_lo, q_hi):
        out.append(rec)
    return out


class _ScanState:
    def __init__(self, field: NumberField, primes: Sequence[int], W: int, ceiling: int):
        self.fixed = _FixedAlpha(field)
        self.primes = list(primes)
        self.W = W
        self.ceiling = ceiling
        self.best: Optional[_Value] = None

    def offer(self, q: int) -> Optional[ScanRecord]:
        v = _value(self.fixed, q, self.primes, self.W, self.ceiling)
        if v is None:
            # straddles an integer or a half-integer at the ceiling
            return ScanRecord(q, RealInterval.from_bounds(0, Fraction(q, 2)), False, True)
        return self._compare(v)

    def _compare(self, v: _Value) -> Optional[ScanRecord]:
        best = self.best
        if best is None:
            self.best = v
            return ScanRecord(v.q, v.interval(), True)
        W = max(v.W, best.W)
        while True:
            if v.ge(best):
                return None
            if v.lt(best):
                self.best = v
                return ScanRecord(v.q, v.interval(), True)
            W *= 2
            if W > self.ceiling:
                return ScanRecord(v.q, v.interval(), False, True)
            v = _value(self.fixed, v.q, self.primes, W, self.ceiling) or v
            best = _value(self.fixed, best.q, self.primes, W, self.ceiling) or best

    def run(self, q_lo: int, q_hi: int) -> Iterator[ScanRecord]:
        """Fast loop at the base width; only near-records take the slow path."""
        primes = self.primes
        W = self.W
        Alo, Ahi = self.fixed.bounds(W)
        delta = Ahi - Alo
        one = 1 << W
        half = one >> 1
        mask = one - 1
        for q in range(q_lo, q_hi + 1):
            f = (q * Alo) & mask
            g = f + q * delta
            if g <= half and f > 0:
                dl = f
            elif f >= half and g < one:
                dl = one - g
            else:
                rec = self.offer(q)
                if rec is not None:
                    yield rec
                continue
            best = self.best
            if best is not None:
                w = 1
                for p in primes:
                    if q % p == 0:
                        w = _weight(q, primes)
                        break
                # certainly no record: q dl / w >= best upper bound (same W)
                if best.W == W and q * dl * best.weight >= best.q * best.dh * w:
                    continue
            rec = self.offer(q)
            if rec is not None:
                yield rec


def _load_resume(path: str, key: dict):
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    if data.get("key") != key:
        raise ValueError("resume file belongs to a different scan")
    return data


def _save_resume(path: str, key: dict, next_q: int, best_q: Optional[int], records: List[ScanRecord]) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump({"key": key, "next_q": next_q, "best_q": best_q,
                   "records": [[r.q, r.is_record, r.undecided] for r in records]}, fh)
    os.replace(tmp, path)


def mixed_scan(field: NumberField, primes: Sequence[int], q_max: int, resume: Optional[str] = None,
               ceiling: int = PREC_CEILING, parts: int = 1, jobs: int = 1,
               q_min: int = 1) -> Iterator[ScanRecord]:
    """Best-so-far records of ``q ||q alpha|| prod_p |q|_p`` for ``q = q_min..q_max``.

    With ``parts > 1`` the range is split, each part is scanned on its own and
    the candidates are replayed in ``q`` order; the trail is the same as a
    sequential scan.  ``resume`` names a checkpoint file written every
    ``2^20`` steps of a sequential scan.
    """
    if not 1 <= q_min <= q_max:
        raise ValueError("need 1 <= q_min <= q_max")
    primes = _check_primes(primes)
    if parts > 1:
        yield from _partitioned(field, primes, q_min, q_max, ceiling, parts, jobs)
        return
    key = {"poly": list(field.min_poly.coeffs), "root": field.selected_root_index, "primes": primes,
           "q_min": q_min, "q_max": q_max}
    state = _ScanState(field, primes, _base_width(q_max), ceiling)
    start, trail = q_min, []
    saved = _load_resume(resume, key) if resume else None
    if saved is not None:
        start = saved["next_q"]
        if saved["best_q"] is not None:
            state.best = _value(state.fixed, saved["best_q"], primes, state.W, ceiling)
        for q, is_rec, und in saved["records"]:
            v = _value(state.fixed, q, primes, state.W, ceiling)
            rec = ScanRecord(q, v.interval() if v else RealInterval.from_bounds(0, Fraction(q, 2)), is_rec, und)
            trail.append(rec)
            yield rec
    q = start
    while q <= q_max:
        hi = min(q_max, q + CHECKPOINT_EVERY - 1)
        for rec in state.run(q, hi):
            trail.append(rec)
            yield rec
        q = hi + 1
        if resume:
            _save_resume(resume, key, q, state.best.q if state.best else None, trail)


def _partitioned(field, primes, q_min, q_max, ceiling, parts, jobs) -> Iterator[ScanRecord]:
    step = -(-(q_max - q_min + 1) // parts)
    ranges = [(lo, min(q_max, lo + step - 1)) for lo in range(q_min, q_max + 1, step)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        # fields hold locks and caches, so workers rebuild theirs from the polynomial
        spec = (list(field.min_poly.coeffs), field.selected_root_index)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_scan_part, spec, primes, lo, hi, ceiling) for lo, hi in ranges]
            chunks = [f.result() for f in futs]
    else:
        chunks = [scan_candidates(field, primes, lo, hi, ceiling) for lo, hi in ranges]
    yield from reduce_records(field, primes, chunks, q_max, ceiling)


def _scan_part(spec, primes, lo, hi, ceiling) -> List[ScanRecord]:
    coeffs, root = spec
    return scan_candidates(NumberField(IntPolynomial(coeffs), root, check_irreducible=False), primes, lo, hi, ceiling)


def reduce_records(field: NumberField, primes: Sequence[int], chunks: Iterable[List[ScanRecord]], q_max: int,
                   ceiling: int = PREC_CEILING) -> Iterator[ScanRecord]:
    """Merge per-part candidates into the global record trail by replaying them in ``q`` order."""
    state = _ScanState(field, primes, _base_width(q_max), ceiling)
    cands = sorted({r.q: r for chunk in chunks for r in chunk}.values(), key=lambda r: r.q)
    for c in cands:
        if c.undecided:
            yield c
            continue
        rec = state.offer(c.q)
        if rec is not None:
            yield rec


# -- Problems 1 and 2 -------------------------------------------------------------------

@dataclass
class ProblemRecord:
    P: IntPolynomial
    xi: RealInterval
    value: RealInterval  # |alpha - xi| prod min{|Norm xi|_p, 1} H^(d+1)


@dataclass
class ProblemScanResult:
    degree: int
    H_max: int
    primes: List[int]
    trail: List[ProblemRecord] = field(default_factory=list)

    @property
    def best(self) -> Optional[ProblemRecord]:
        return self.trail[-1] if self.trail else None


def _norm_weight(P: IntPolynomial, primes: Sequence[int]) -> Fraction:
    norm = Fraction(P[0], P.leading)
    w = Fraction(1)
    for p in primes:
        a = padic_abs(norm, p)
        if a.exponent < 0:
            w *= a.as_fraction()
    return w


def _problem_value(field: NumberField, P: IntPolynomial, primes: Sequence[int], d: int,
                   ceiling: int = PREC_CEILING) -> List[ProblemRecord]:
    """Values for the real roots of ``P`` within distance 1 of ``alpha``."""
    out = []
    w = _norm_weight(P, primes)
    Hpow = Fraction(P.height() ** (d + 1))
    for iv in isolate_real_roots(P):
        prec = DEFAULT_PREC
        while prec <= ceiling:
            a = field.alpha(prec)
            xi = refine_root(P, iv, Fraction(1, 1 << prec))
            dist = abs(a - xi)
            if dist.certainly_ge(1):
                break
            if not dist.contains_zero() and dist.width() * (1 << 20) < dist.lower:
                if dist.certainly_lt(1):
                    out.append(ProblemRecord(P, xi, dist * (w * Hpow)))
                break
            prec *= 2
    return out


def problem_scan(field: NumberField, primes: Sequence[int], degree: int, H_max: int) -> ProblemScanResult:
    """Search primitive irreducible ``P`` of degree ``<= degree`` and height ``<= H_max`` with a real root
    near ``alpha`` minimizing ``|alpha - xi| prod_p min{|Norm xi|_p, 1} H^(d+1)``.

    Since the p-adic factor is at least ``1/H``, a record needs
    ``|alpha - xi| < best / H^d``, hence ``|P(alpha)| < S min(H, best / H^(d-1))``
    with ``S = sum_k k (|alpha| + 1)^(k-1)``.  That pins ``a_0`` to a short window
    for each choice of the other coefficients.  Polynomials with ``a_0 = 0``
    (root 0) are excluded.
    """
    primes = _check_primes(primes)
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if H_max < 1:
        raise ValueError("H_max must be at least 1")
    res = ProblemScanResult(degree, H_max, primes)
    af = float(field.alpha())
    S = sum(k * (abs(af) + 1) ** (k - 1) for k in range(1, degree + 1)) * (1 + 1e-9) + 1e-9
    best: Optional[RealInterval] = None
    best_f = float("inf")
    # tails (a_1, ..., a_d) ordered by max |a_k|, then lexicographically
    tails = []
    for t in product(range(-H_max, H_max + 1), repeat=degree):
        nz = [k for k, c in enumerate(t) if c]
        if not nz or t[nz[-1]] < 0:
            continue
        tails.append((max(abs(c) for c in t), t))
    tails.sort()
    for h_tail, t in tails:
        q_val = sum(c * af ** (k + 1) for k, c in enumerate(t))
        reach = S * min(H_max, best_f / h_tail ** (degree - 1)) if best_f < float("inf") else S * H_max
        lo = max(-H_max, int(-q_val - reach) - 1)
        hi = min(H_max, int(-q_val + reach) + 1)
        for a0 in range(lo, hi + 1):
            if a0 == 0:
                continue
            coeffs = (a0,) + t
            P = IntPolynomial(coeffs)
            c, prim = content_and_primitive(P)
            if c != 1 or prim != P:
                continue
            H = P.height()
            # cheap float screen before any certified work
            if best_f < float("inf"):
                pa = abs(a0 + q_val)
                if pa > S * H * min(1.0, best_f / H ** degree) * (1 + 1e-6) + 1e-12:
                    continue
            if certify_degree(P) is not True:
                continue
            for rec in _problem_value(field, P, primes, degree):
                if best is None or rec.value.certainly_lt(best):
                    best = rec.value
                    best_f = float(best.upper)
                    res.trail.append(rec)
    return res
