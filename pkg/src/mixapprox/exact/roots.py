"""Certified real root isolation and refinement, and complex root boxes.

Real roots are isolated with a Sturm chain and bisection at dyadic points, so
every decision is an exact integer sign evaluation.  Non-real roots are located
numerically and then certified with Gerschgorin discs for the matrix
``diag(z) - 1 w^T`` whose characteristic polynomial is ``f / lc(f)``; the
column discs have centres ``z_j - w_j`` and radii ``(n - 1)|w_j|``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

import mpmath

from .interval import ComplexBox, RealInterval
from .poly import IntPolynomial, cauchy_bound, is_squarefree, squarefree_part, sturm_sequence, sign_variations
from .precision import DEFAULT_PREC, PREC_CEILING, PrecisionCeilingError, escalation

Dyadic = Tuple[int, int]  # (mantissa m, exponent k) standing for m / 2**k


def _sturm_var(seq: List[IntPolynomial], m: int, k: int) -> int:
    return sign_variations(P.sign_at_dyadic(m, k) for P in seq)


def _isolate_dyadic(f: IntPolynomial) -> List[Tuple[int, int, int]]:
    """Isolating intervals ``(m_lo, m_hi, k)`` meaning ``[m_lo/2^k, m_hi/2^k]``."""
    seq = sturm_sequence(f)
    B = cauchy_bound(f)
    k = 0
    lo, hi = -B, B
    total = _sturm_var(seq, lo, 0) - _sturm_var(seq, hi, 0)
    out: List[Tuple[int, int, int]] = []
    # stack of half-open (a, b] intervals with their root counts
    stack = [(lo, hi, k, total)]
    while stack:
        a, b, k, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_clean_isolator(f, a, b, k))
            continue
        a2, b2, k2 = 2 * a, 2 * b, k + 1
        m = (a2 + b2) // 2
        va, vm, vb = _sturm_var(seq, a2, k2), _sturm_var(seq, m, k2), _sturm_var(seq, b2, k2)
        stack.append((m, b2, k2, vm - vb))
        stack.append((a2, m, k2, va - vm))
    out.sort(key=lambda t: Fraction(t[0], 1 << t[2]))
    return _separate(f, out)


def _clean_isolator(f: IntPolynomial, a: int, b: int, k: int) -> Tuple[int, int, int]:
    """Shrink ``(a, b]`` holding one root so the closed interval holds exactly it."""
    if f.sign_at_dyadic(b, k) == 0:
        return (b, b, k)
    # a root sitting at ``a`` belongs to the left neighbour; step away from it
    while f.sign_at_dyadic(a, k) == 0:
        a, b, k = 2 * a, 2 * b, k + 1
        m = (a + b) // 2
        sm = f.sign_at_dyadic(m, k)
        if sm == 0:
            return (m, m, k)
        if sm == f.sign_at_dyadic(b, k):
            b = m
        else:
            a = m
    return (a, b, k)


def _bisect_once(f: IntPolynomial, iv: Tuple[int, int, int]) -> Tuple[int, int, int]:
    a, b, k = iv
    if a == b:
        return iv
    a, b, k = 2 * a, 2 * b, k + 1
    m = (a + b) // 2
    sm = f.sign_at_dyadic(m, k)
    if sm == 0:
        return (m, m, k)
    if sm == f.sign_at_dyadic(a, k):
        return (m, b, k)
    return (a, m, k)


def _separate(f: IntPolynomial, ivs: List[Tuple[int, int, int]]) -> List[Tuple[int, int, int]]:
    """Bisect neighbours until consecutive closed intervals are disjoint."""
    ivs = list(ivs)
    for i in range(len(ivs) - 1):
        while True:
            a1, b1, k1 = ivs[i]
            a2, b2, k2 = ivs[i + 1]
            if Fraction(b1, 1 << k1) < Fraction(a2, 1 << k2):
                break
            ivs[i] = _bisect_once(f, ivs[i])
            ivs[i + 1] = _bisect_once(f, ivs[i + 1])
    return ivs


def isolate_real_roots(f: IntPolynomial) -> List[RealInterval]:
    """Disjoint closed intervals, ascending, one per real root of squarefree ``f``.

    >>> len(isolate_real_roots(IntPolynomial([-2, 0, 1])))
    2
    """
    if f.is_zero:
        raise ValueError("zero polynomial has no isolated roots")
    if not is_squarefree(f):
        raise ValueError("isolate_real_roots needs a squarefree polynomial")
    if f.degree <= 0:
        return []
    return [RealInterval.from_dyadic(a, b, k) for a, b, k in _isolate_dyadic(f)]


def _target_bits(target: Fraction) -> int:
    """Smallest ``K`` with ``2 * 2**-K <= target``."""
    # 2 * 2**-K <= n/d  <=>  2*d <= n * 2**K
    n, d = target.numerator, target.denominator
    K = max(1, (2 * d).bit_length() - n.bit_length())
    while (n << K) < 2 * d:
        K += 1
    while K > 1 and (n << (K - 1)) >= 2 * d:
        K -= 1
    return K


def _to_dyadic(x: Fraction) -> Tuple[int, int]:
    d = x.denominator
    if d & (d - 1):
        raise ValueError("interval endpoint is not dyadic")
    return x.numerator, d.bit_length() - 1


def refine_root(f: IntPolynomial, iso: RealInterval, target_width) -> RealInterval:
    """Shrink an isolating interval of a simple root to width at most ``target_width``."""
    target = Fraction(target_width)
    if target <= 0:
        raise ValueError("target width must be positive")
    if iso.width() <= target:
        return iso
    g = squarefree_part(f)
    lo, hi = iso.lower, iso.upper
    (ml, kl), (mh, kh) = _to_dyadic(lo), _to_dyadic(hi)
    k = max(kl, kh)
    a, b = ml << (k - kl), mh << (k - kh)
    sa, sb = g.sign_at_dyadic(a, k), g.sign_at_dyadic(b, k)
    if sa == 0:
        return RealInterval.from_dyadic(a, a, k, iso.prec)
    if sb == 0:
        return RealInterval.from_dyadic(b, b, k, iso.prec)
    if sa == sb:
        raise ValueError("interval does not bracket a sign change")
    K = _target_bits(target)
    dg = g.derivative()
    ctx = mpmath.MPContext()
    while True:
        if Fraction(b - a, 1 << k) <= target:
            return RealInterval.from_dyadic(a, b, k, iso.prec)
        hit = _newton_certify(g, dg, a, b, k, sa, K, ctx)
        if hit is not None:
            return RealInterval.from_dyadic(hit[0], hit[1], K, iso.prec)
        # a handful of bisections before the next Newton attempt
        for _ in range(8):
            a, b, k = 2 * a, 2 * b, k + 1
            m = (a + b) // 2
            sm = g.sign_at_dyadic(m, k)
            if sm == 0:
                return RealInterval.from_dyadic(m, m, k, iso.prec)
            if sm == sa:
                a = m
            else:
                b = m
            if Fraction(b - a, 1 << k) <= target:
                break


def _newton_certify(g, dg, a, b, k, sa, K, ctx):
    """Approximate the root by Newton in floating point, then certify exactly.

    Succeeds when ``g`` changes sign on ``[(m-1)/2^K, (m+1)/2^K]`` inside the
    bracket, where ``m/2^K`` is the rounded Newton iterate.
    """
    ctx.prec = K + 32
    x = ctx.mpf(a + b) / (2 << k) if k < 60000 else ctx.ldexp(ctx.mpf(a + b), -k - 1)
    lo_f = ctx.ldexp(ctx.mpf(a), -k)
    hi_f = ctx.ldexp(ctx.mpf(b), -k)
    cs = [ctx.mpf(c) for c in reversed(g.coeffs)]
    ds = [ctx.mpf(c) for c in reversed(dg.coeffs)]
    for _ in range(2 * K.bit_length() + 8):
        fx = ctx.polyval(cs, x)
        dx = ctx.polyval(ds, x)
        if dx == 0:
            return None
        step = fx / dx
        x = x - step
        if not (lo_f <= x <= hi_f):
            return None
        if step == 0 or abs(step) < ctx.ldexp(1, -K - 8):
            break
    m = int(ctx.nint(ctx.ldexp(x, K)))
    ml, mh = m - 1, m + 1
    # stay inside the bracket
    if Fraction(ml, 1 << K) < Fraction(a, 1 << k) or Fraction(mh, 1 << K) > Fraction(b, 1 << k):
        return None
    sl, sh = g.sign_at_dyadic(ml, K), g.sign_at_dyadic(mh, K)
    if sl == 0:
        return (ml, ml)
    if sh == 0:
        return (mh, mh)
    if sl == sa and sh != sa:
        return (ml, mh)
    return None


def _point_box(z, prec: int) -> ComplexBox:
    re = RealInterval(z.real._mpf_, z.real._mpf_, prec)
    im = RealInterval(z.imag._mpf_, z.imag._mpf_, prec)
    return ComplexBox(re, im)


def _certify_nonreal(f: IntPolynomial, approx, prec: int):
    """Gerschgorin boxes for the upper-half-plane approximations, or ``None``."""
    n = f.degree
    pts = [_point_box(z, prec) for z in approx]
    lc = RealInterval.exact(f.leading, prec)
    boxes = []
    for i, zi in enumerate(pts):
        val = ComplexBox.exact(0, prec)
        for c in reversed(f.coeffs):
            val = val * zi + c
        den = ComplexBox(lc)
        for j, zj in enumerate(pts):
            if j != i:
                den = den * (zi - zj)
        try:
            w = val / den
        except ZeroDivisionError:
            return None
        centre = zi - w
        r = w.abs() * (n - 1)
        rad = r.upper
        boxes.append(ComplexBox(centre.re.widen(rad), centre.im.widen(rad)))
    for i in range(n):
        for j in range(i + 1, n):
            if boxes[i].overlaps(boxes[j]):
                return None
    return boxes


def complex_roots(f: IntPolynomial, precision: int = DEFAULT_PREC, ceiling: int | None = None) -> List[ComplexBox]:
    """Boxes around all roots: real ascending, then upper-half representatives, then conjugates.

    Real roots have zero-width imaginary parts and real width at most
    ``2**-precision``.  Precision doubles internally until the non-real discs
    separate; the configured ceiling bounds the escalation.
    """
    g = squarefree_part(f)
    n = g.degree
    if n <= 0:
        return []
    top = PREC_CEILING if ceiling is None else ceiling
    reals = []
    for iv in isolate_real_roots(g):
        r = refine_root(g, iv, Fraction(1, 1 << precision))
        reals.append(ComplexBox(r, RealInterval.exact(0, precision)))
    n_pairs = (n - len(reals)) // 2
    if n_pairs == 0:
        return reals
    ctx = mpmath.MPContext()
    for prec in escalation(max(precision, 64), top):
        ctx.prec = prec + 20
        try:
            approx = ctx.polyroots([int(c) for c in reversed(g.coeffs)], maxsteps=200 + 4 * prec, extraprec=prec)
        except ctx.NoConvergence:
            continue
        boxes = _certify_nonreal(g, approx, prec + 20)
        if boxes is None:
            continue
        upper = [b for b in boxes if b.im.certainly_gt(0)]
        if len(upper) != n_pairs or sum(1 for b in boxes if b.im.certainly_lt(0)) != n_pairs:
            continue
        upper.sort(key=lambda b: (b.re.mid(), b.im.mid()))
        return reals + upper + [b.conjugate() for b in upper]
    raise PrecisionCeilingError(f"could not separate the complex roots of {f} below {top} bits")
