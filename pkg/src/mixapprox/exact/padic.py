"""p-adic valuations and absolute values of rationals, kept exact."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rational = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24 with these bases
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _vp_int(n: int, p: int) -> int:
    # doubling powers keeps this fast on huge integers with small valuation
    v = 0
    n = abs(n)
    while n % p == 0:
        pk, k = p, 1
        while n % (pk * pk) == 0:
            pk, k = pk * pk, 2 * k
        n //= pk
        v += k
    return v


def vp(x: Rational, p: int) -> int:
    """Return the exponent of ``p`` in the nonzero rational ``x``.

    >>> vp(12, 3), vp(Fraction(9, 8), 2)
    (1, -3)
    """
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


@dataclass(frozen=True, order=False)
class PAdicAbs:
    """The exact value ``p**exponent`` (``exponent`` rational), or 0 when ``exponent is None``."""

    p: int
    exponent: Optional[Fraction]

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def as_fraction(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        if self.exponent.denominator != 1:
            raise ValueError("p-adic absolute value is irrational")
        return Fraction(self.p) ** int(self.exponent)

    def __float__(self) -> float:
        if self.exponent is None:
            return 0.0
        return float(self.p) ** float(self.exponent)

    def _key(self, other: "PAdicAbs"):
        if self.p != other.p:
            raise ValueError("comparing absolute values for different primes")
        return self.exponent, other.exponent

    def __lt__(self, other: "PAdicAbs") -> bool:
        a, b = self._key(other)
        if a is None:
            return b is not None
        return b is not None and a < b

    def __le__(self, other: "PAdicAbs") -> bool:
        return self == other or self < other

    def __gt__(self, other: "PAdicAbs") -> bool:
        return other < self

    def __ge__(self, other: "PAdicAbs") -> bool:
        return other <= self

    def le_rational(self, c: Rational) -> bool:
        """Exact test ``p**exponent <= c`` for a rational ``c >= 0``."""
        c = Fraction(c)
        if self.exponent is None:
            return c >= 0
        if c <= 0:
            return False
        a, b = self.exponent.numerator, self.exponent.denominator
        # p^(a/b) <= c  <=>  p^a <= c^b
        return Fraction(self.p) ** a <= c**b

    def __mul__(self, other: "PAdicAbs") -> "PAdicAbs":
        self._key(other)
        if self.exponent is None or other.exponent is None:
            return PAdicAbs(self.p, None)
        return PAdicAbs(self.p, self.exponent + other.exponent)

    def to_json(self) -> dict:
        e = self.exponent
        return {"p": self.p, "exponent": None if e is None else f"{e.numerator}/{e.denominator}"}

    def min_one(self) -> "PAdicAbs":
        """``min{self, 1}``."""
        if self.exponent is not None and self.exponent > 0:
            return PAdicAbs(self.p, Fraction(0))
        return self


def padic_abs(x: Rational, p: int) -> PAdicAbs:
    if x == 0:
        return PAdicAbs(p, None)
    return PAdicAbs(p, Fraction(-vp(x, p)))


def padic_abs_from_valuation(v: Optional[Rational], p: int) -> PAdicAbs:
    """Absolute value ``p**(-v)``; ``v=None`` stands for valuation +infinity."""
    if v is None:
        return PAdicAbs(p, None)
    return PAdicAbs(p, -Fraction(v))
