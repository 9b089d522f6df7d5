"""Irreducibility decisions for integer polynomials of small degree.

``certify_degree`` returns ``True`` (irreducible over Q), ``False`` (reducible)
or ``None`` (could not decide).  The decision procedure:

* degree 1: irreducible;
* rational roots: any rational root ``a/b`` of a primitive ``P`` has
  ``b | a_n``, and two such rationals differ by at least ``1/a_n^2``, so each
  real root refined to width below ``1/(2 a_n^2)`` has at most one candidate,
  found with ``Fraction.limit_denominator`` and checked exactly.  A prime ``q``
  for which ``P`` has no root mod ``q`` settles it faster;
* degrees 2 and 3 are then decided;
* degrees 4 and 5: a complete quadratic-factor search when the coefficients are
  small enough to factor (factor ``b2 X^2 + b1 X + b0`` has ``b2 | a_n``,
  ``b0 | a_0`` and ``g(+-1) | P(+-1)``, which pins ``b1``);
* otherwise: irreducibility modulo some prime ``q <= 97`` certifies, else unknown.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import List, Optional

from ..exact.padic import is_prime
from ..exact.poly import IntPolynomial, content_and_primitive, is_squarefree, qdivmod, squarefree_part
from ..exact.roots import isolate_real_roots, refine_root

SMALL_PRIMES = [q for q in range(2, 98) if is_prime(q)]
FACTOR_LIMIT = 10**12


# -- polynomials over F_q (coefficient lists, low degree first) ---------------

def _mod_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_divmod(a: List[int], b: List[int], q: int):
    a = list(a)
    inv = pow(b[-1], -1, q)
    out = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % q
        out[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] = (a[k + j] - c * bj) % q
    return _mod_trim(out), _mod_trim(a[: len(b) - 1])


def _mod_mulmod(a: List[int], b: List[int], m: List[int], q: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _mod_divmod(_mod_trim(out), m, q)[1]


def _mod_powmod(base: List[int], e: int, m: List[int], q: int) -> List[int]:
    result = [1]
    while e:
        if e & 1:
            result = _mod_mulmod(result, base, m, q)
        e >>= 1
        if e:
            base = _mod_mulmod(base, base, m, q)
    return result


def _mod_sub(a: List[int], b: List[int], q: int) -> List[int]:
    n = max(len(a), len(b))
    a, b = a + [0] * (n - len(a)), b + [0] * (n - len(b))
    return _mod_trim([(x - y) % q for x, y in zip(a, b)])


def _mod_gcd(a: List[int], b: List[int], q: int) -> List[int]:
    a, b = _mod_trim(list(a)), _mod_trim(list(b))
    while b:
        a, b = b, _mod_divmod(a, b, q)[1]
    return a


def _prime_factors(n: int) -> List[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_mod(P: IntPolynomial, q: int) -> bool:
    """Rabin's test for ``P mod q`` (requires ``q`` not dividing the leading coefficient)."""
    f = _mod_trim([c % q for c in P.coeffs])
    n = len(f) - 1
    if n != P.degree:
        raise ValueError("prime divides the leading coefficient")
    if n == 1:
        return True
    x = [0, 1]
    for ell in _prime_factors(n):
        h = _mod_powmod(x, q ** (n // ell), f, q)
        g = _mod_gcd(f, _mod_sub(h, x, q), q)
        if len(g) > 1:
            return False
    h = _mod_powmod(x, q**n, f, q)
    return not _mod_sub(h, x, q)


def _has_root_mod(P: IntPolynomial, q: int) -> bool:
    f = [c % q for c in P.coeffs]
    for x in range(q):
        acc = 0
        for c in reversed(f):
            acc = (acc * x + c) % q
        if acc == 0:
            return True
    return False


# -- rational roots ----------------------------------------------------------

def rational_roots(P: IntPolynomial) -> List[Fraction]:
    """All rational roots of ``P`` (distinct), found without factoring coefficients."""
    if P.degree <= 0:
        return []
    out = []
    if P[0] == 0:
        out.append(Fraction(0))
        k = next(i for i, c in enumerate(P.coeffs) if c)
        P = IntPolynomial(P.coeffs[k:])
        if P.degree == 0:
            return out
    P = squarefree_part(content_and_primitive(P)[1])
    bound = abs(P.leading)
    width = Fraction(1, 2 * bound * bound + 1)
    for iv in isolate_real_roots(P):
        r = refine_root(P, iv, width)
        cand = r.mid().limit_denominator(bound)
        if P.eval_fraction(cand) == 0:
            out.append(cand)
    return sorted(set(out))


def has_rational_root(P: IntPolynomial) -> bool:
    if P.degree >= 1 and P[0] == 0:
        return True
    for q in SMALL_PRIMES[:8]:
        if P.leading % q and not _has_root_mod(P, q):
            return False
    return bool(rational_roots(P))


# -- quadratic factors ----------------------------------------------------------

def _divisors(n: int) -> List[int]:
    n = abs(n)
    ds = [1]
    for p in _prime_factors(n):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def quadratic_factor(P: IntPolynomial) -> Optional[IntPolynomial]:
    """A monic-up-to-sign integer quadratic factor of ``P``, or ``None``.

    Assumes ``P`` has no rational roots (so ``P(0), P(1), P(-1)`` are nonzero).
    """
    a_n, a_0 = P.leading, P[0]
    f1, fm1 = P(1), P(-1)
    for b2 in _divisors(a_n):
        for b0_abs in _divisors(a_0):
            for b0 in (b0_abs, -b0_abs):
                for g1_abs in _divisors(f1):
                    for g1 in (g1_abs, -g1_abs):
                        b1 = g1 - b2 - b0
                        gm1 = b2 - b1 + b0
                        if gm1 == 0 or fm1 % gm1:
                            continue
                        g = IntPolynomial([b0, b1, b2])
                        _, r = qdivmod(P.coeffs, g.coeffs)
                        if not r:
                            return g
    return None


def certify_degree(P: IntPolynomial) -> Optional[bool]:
    """``True`` if ``P`` is irreducible over Q, ``False`` if reducible, ``None`` if unknown.

    >>> certify_degree(IntPolynomial([-2, 0, 1])), certify_degree(IntPolynomial([-1, 0, 1]))
    (True, False)
    """
    if P.degree <= 0:
        return False
    c, P = content_and_primitive(P)
    n = P.degree
    if n == 1:
        return True
    if not is_squarefree(P):
        return False
    if n == 2:
        disc = P[1] ** 2 - 4 * P[0] * P[2]
        return not (disc >= 0 and isqrt(disc) ** 2 == disc)
    for q in SMALL_PRIMES:
        if P.leading % q == 0:
            continue
        if irreducible_mod(P, q):
            return True
    if has_rational_root(P):
        return False
    if n == 3:
        return True
    if n <= 5 and max(abs(P.leading), abs(P[0]), abs(P(1)), abs(P(-1))) <= FACTOR_LIMIT:
        return quadratic_factor(P) is None
    return None


__all__ = ["certify_degree", "rational_roots", "has_rational_root", "quadratic_factor", "irreducible_mod"]
