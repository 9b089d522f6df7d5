"""Dense univariate polynomials with integer coefficients.

Coefficients are stored low degree first.  Division-type helpers that leave
Z[X] work over Q with :class:`fractions.Fraction` coefficients and return plain
coefficient lists.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

Number = Union[int, Fraction]


def _trim(coeffs: Sequence) -> list:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = _trim(int(a) for a in coeffs)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse ``x^3-2``-style ASCII or a coefficient list such as ``[-2,0,0,1]``.

        Coefficient lists are read low degree first.
        """
        s = text.strip().replace(" ", "")
        if s.startswith("["):
            return cls(int(t) for t in s.strip("[]").split(",") if t)
        s = s.replace("**", "^").lower()
        if not s:
            raise ValueError("empty polynomial")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out: dict = {}
        term_re = re.compile(r"^([+-]?)(\d*)\*?(x(?:\^(\d+))?)?$")
        for t in terms:
            m = term_re.match(t)
            if not m or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse term {t!r} in {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            deg = 0 if not m.group(3) else int(m.group(4) or 1)
            out[deg] = out.get(deg, 0) + sign * coef
        n = max(out)
        return cls(out.get(k, 0) for k in range(n + 1))

    # -- basic structure ------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def height(self) -> int:
        return max((abs(a) for a in self.coeffs), default=0)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mag = abs(a)
            body = "" if (mag == 1 and k) else str(mag)
            if k:
                body += ("*" if body else "") + ("x" if k == 1 else f"x^{k}")
            parts.append(("-" if a < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-a for a in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * self.coeffs[k] for k in range(1, len(self)))

    def reversed(self) -> "IntPolynomial":
        """``X^n P(1/X)``."""
        return IntPolynomial(reversed(self.coeffs))

    def scale_variable(self, c: int) -> "IntPolynomial":
        """``P(c X)``."""
        return IntPolynomial(a * c**k for k, a in enumerate(self.coeffs))

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Exact value at a rational point via homogenised integer Horner."""
        x = Fraction(x)
        n, d = x.numerator, x.denominator
        if not self.coeffs:
            return Fraction(0)
        acc = 0
        dk = 1
        for a in reversed(self.coeffs):
            acc = acc * n + a * dk
            dk *= d
        return Fraction(acc, d ** self.degree)

    def sign_at(self, x: Fraction) -> int:
        """Sign of ``P(x)`` for rational ``x`` (denominator powers are positive)."""
        x = Fraction(x)
        n, d = x.numerator, x.denominator
        acc = 0
        dk = 1
        for a in reversed(self.coeffs):
            acc = acc * n + a * dk
            dk *= d
        return (acc > 0) - (acc < 0)

    def sign_at_dyadic(self, m: int, k: int) -> int:
        """Sign of ``P(m / 2**k)``."""
        acc = 0
        shift = 0
        for a in reversed(self.coeffs):
            acc = acc * m + (a << shift)
            shift += k
        return (acc > 0) - (acc < 0)

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def is_primitive(self) -> bool:
        return self.content() == 1


def content_and_primitive(P: IntPolynomial) -> Tuple[int, IntPolynomial]:
    """Split ``P`` as content times a primitive part with positive leading coefficient.

    >>> content_and_primitive(IntPolynomial([2, 4, 6]))
    (2, IntPolynomial([1, 2, 3]))
    """
    if P.is_zero:
        raise ValueError("content of the zero polynomial")
    c = P.content()
    sign = 1 if P.leading > 0 else -1
    return c, IntPolynomial(sign * (a // c) for a in P.coeffs)


# -- polynomial arithmetic over Q (coefficient lists) -----------------------

def qdivmod(a: Sequence[Number], b: Sequence[Number]) -> Tuple[List[Fraction], List[Fraction]]:
    a = [Fraction(x) for x in _trim(a)]
    b = [Fraction(x) for x in _trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return _trim(q), _trim(a[: len(b) - 1])


def qgcd(a: Sequence[Number], b: Sequence[Number]) -> List[Fraction]:
    """Monic gcd over Q."""
    a = [Fraction(x) for x in _trim(a)]
    b = [Fraction(x) for x in _trim(b)]
    while b:
        a, b = b, qdivmod(a, b)[1]
    if not a:
        return []
    lc = a[-1]
    return [x / lc for x in a]


def qxgcd(a: Sequence[Number], b: Sequence[Number]):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` monic, over Q."""
    r0, r1 = [Fraction(x) for x in _trim(a)], [Fraction(x) for x in _trim(b)]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        t0, t1 = t1, _qsub(t0, _qmul(q, t1))
    lc = r0[-1]
    return [x / lc for x in r0], [x / lc for x in s0], [x / lc for x in t0]


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _qsub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def to_int_poly(coeffs: Sequence[Number]) -> IntPolynomial:
    """Clear denominators of a rational coefficient list and take the primitive part."""
    c = [Fraction(x) for x in _trim(coeffs)]
    if not c:
        return IntPolynomial([])
    den = reduce(lambda x, y: x * y // gcd(x, y), (x.denominator for x in c), 1)
    return content_and_primitive(IntPolynomial(int(x * den) for x in c))[1]


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """``f / gcd(f, f')`` as a primitive integer polynomial."""
    if f.degree <= 0:
        return f
    g = qgcd(f.coeffs, f.derivative().coeffs)
    if len(g) <= 1:
        return content_and_primitive(f)[1]
    q, r = qdivmod(f.coeffs, g)
    assert not r
    return to_int_poly(q)


def is_squarefree(f: IntPolynomial) -> bool:
    return f.degree <= 0 or len(qgcd(f.coeffs, f.derivative().coeffs)) <= 1


def resultant(f: IntPolynomial, g: IntPolynomial) -> Fraction:
    """Resultant via the subresultant pseudo-remainder sequence.

    >>> resultant(IntPolynomial([-2, 0, 1]), IntPolynomial([-1, 1]))
    Fraction(-1, 1)
    """
    if f.is_zero and g.is_zero:
        raise ValueError("resultant of two zero polynomials")
    if f.is_zero or g.is_zero:
        return Fraction(0)
    A, B = list(f.coeffs), list(g.coeffs)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
    dA, dB = len(A) - 1, len(B) - 1
    if dB == 0:
        return Fraction(s * B[0] ** dA)
    a = reduce(gcd, A, 0)
    b = reduce(gcd, B, 0)
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a**dB * b**dA
    gg, h = 1, 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return Fraction(0)
        A = B
        divisor = gg * h**delta
        B = [x // divisor for x in R]
        gg = A[-1]
        h = gg**delta // h ** (delta - 1) if delta >= 1 else h
        if len(B) == 1:
            break
    dA = len(A) - 1
    h = B[0] ** dA // h ** (dA - 1) if dA >= 1 else h
    return Fraction(s * t * h)


def _prem(A: List[int], B: List[int]) -> List[int]:
    """Pseudo-remainder ``lc(B)^(deg A - deg B + 1) A mod B`` over Z."""
    r = list(A)
    lb = B[-1]
    db = len(B) - 1
    e = len(A) - len(B) + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, bj in enumerate(B):
            r[k + j] -= c * bj
        r = _trim(r)
        e -= 1
    return [x * lb**e for x in r]


def sturm_sequence(f: IntPolynomial) -> List[IntPolynomial]:
    """Sturm chain with primitive integer members (positive rescalings keep sign data)."""
    seq = [f, f.derivative()]
    while not seq[-1].is_zero and seq[-1].degree > 0:
        _, r = qdivmod(seq[-2].coeffs, seq[-1].coeffs)
        if not r:
            break
        r = [-x for x in r]
        den = reduce(lambda x, y: x * y // gcd(x, y), (x.denominator for x in r), 1)
        ints = [int(x * den) for x in r]
        c = reduce(gcd, ints, 0)
        seq.append(IntPolynomial(x // c for x in ints))
    return seq


def sign_variations(signs: Iterable[int]) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def sturm_count(seq: List[IntPolynomial], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in ``(a, b]``."""
    va = sign_variations(P.sign_at(a) for P in seq)
    vb = sign_variations(P.sign_at(b) for P in seq)
    return va - vb


def cauchy_bound(f: IntPolynomial) -> int:
    """Integer ``B`` with every complex root strictly inside ``|z| < B``."""
    lc = abs(f.leading)
    m = max((abs(a) for a in f.coeffs[:-1]), default=0)
    return m // lc + 2
