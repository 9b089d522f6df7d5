"""Outward-rounded real intervals and complex boxes with dyadic endpoints.

Endpoint arithmetic and the elementary functions are delegated to the pure
interval kernels of ``mpmath.libmp.libmpi``; every operation takes an explicit
precision and rounds outward, so each result encloses the exact value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Tuple, Union

from mpmath.libmp import libmpf, libmpi
from mpmath.libmp.libmpf import (
    fzero,
    mpf_cmp,
    mpf_floor,
    round_ceiling,
    round_floor,
)

from .precision import DEFAULT_PREC
from .textint import int_to_str

Rational = Union[int, Fraction]


def _mpf_from_fraction(q: Fraction, prec: int, rnd) -> tuple:
    q = Fraction(q)
    if q.denominator & (q.denominator - 1) == 0:
        # dyadic: exact, whatever the precision
        e = q.denominator.bit_length() - 1
        return libmpf.from_man_exp(q.numerator, -e)
    return libmpf.from_rational(q.numerator, q.denominator, prec, rnd)


def mpf_to_fraction(x: tuple) -> Fraction:
    if x in (libmpf.finf, libmpf.fninf, libmpf.fnan):
        raise OverflowError("non-finite interval endpoint")
    p, q = libmpf.to_rational(x)
    return Fraction(int(p), int(q))


def _dyadic_str(x: tuple) -> str:
    man, exp = libmpf.to_man_exp(x) if x != fzero else (0, 0)
    return f"{int_to_str(man)}*2^{int(exp)}"


class RealInterval:
    """Closed interval ``[lower, upper]`` with dyadic endpoints.

    ``prec`` is the working precision used for operations that must round.
    Binary operations use the larger precision of their operands.
    """

    __slots__ = ("_a", "_b", "prec")

    def __init__(self, a: tuple, b: tuple, prec: int = DEFAULT_PREC):
        if mpf_cmp(a, b) > 0:
            raise ValueError("interval lower endpoint exceeds upper endpoint")
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("RealInterval is immutable")

    def __reduce__(self):
        return (RealInterval, (self._a, self._b, self.prec))

    # -- construction ---------------------------------------------------
    @classmethod
    def exact(cls, q: Rational, prec: int = DEFAULT_PREC) -> "RealInterval":
        """Tightest enclosure of ``q``; zero width when ``q`` is dyadic."""
        return cls(_mpf_from_fraction(q, prec, round_floor), _mpf_from_fraction(q, prec, round_ceiling), prec)

    @classmethod
    def from_bounds(cls, lo: Rational, hi: Rational, prec: int = DEFAULT_PREC) -> "RealInterval":
        return cls(_mpf_from_fraction(lo, prec, round_floor), _mpf_from_fraction(hi, prec, round_ceiling), prec)

    @classmethod
    def from_dyadic(cls, m_lo: int, m_hi: int, k: int, prec: int = DEFAULT_PREC) -> "RealInterval":
        """``[m_lo / 2**k, m_hi / 2**k]``."""
        return cls(libmpf.from_man_exp(m_lo, -k), libmpf.from_man_exp(m_hi, -k), prec)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "RealInterval":
        a, b = libmpi.mpi_pi(prec)
        return cls(a, b, prec)

    def with_prec(self, prec: int) -> "RealInterval":
        return RealInterval(self._a, self._b, prec)

    @staticmethod
    def _wrap(pair, prec: int) -> "RealInterval":
        return RealInterval(pair[0], pair[1], prec)

    def _coerce(self, other) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        if isinstance(other, (int, Fraction)):
            return RealInterval.exact(other, self.prec)
        return NotImplemented

    # -- endpoints ------------------------------------------------------
    @property
    def lower(self) -> Fraction:
        return mpf_to_fraction(self._a)

    @property
    def upper(self) -> Fraction:
        return mpf_to_fraction(self._b)

    @property
    def mpi(self) -> tuple:
        return (self._a, self._b)

    def width(self) -> Fraction:
        return self.upper - self.lower

    def mid(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def __float__(self) -> float:
        return libmpf.to_float(libmpi.mpi_mid(self.mpi, 53))

    def log2_width(self) -> float:
        """Rough log2 of the width (``-inf`` for a point)."""
        w = libmpf.mpf_sub(self._b, self._a, 64, round_ceiling)
        if w == fzero:
            return float("-inf")
        man, exp = libmpf.to_man_exp(w)
        return int(exp) + int(man).bit_length()

    def is_point(self) -> bool:
        return self._a == self._b

    def contains(self, x: Union[Rational, "RealInterval"]) -> bool:
        if isinstance(x, RealInterval):
            return mpf_cmp(self._a, x._a) <= 0 and mpf_cmp(x._b, self._b) <= 0
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def contains_zero(self) -> bool:
        return mpf_cmp(self._a, fzero) <= 0 <= mpf_cmp(self._b, fzero)

    def sign(self):
        """``+1``/``-1`` when certified, ``0`` for the point zero, ``None`` if undecided."""
        if mpf_cmp(self._a, fzero) > 0:
            return 1
        if mpf_cmp(self._b, fzero) < 0:
            return -1
        if self._a == fzero and self._b == fzero:
            return 0
        return None

    def certainly_lt(self, other) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._b, other._a) < 0

    def certainly_le(self, other) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._b, other._a) <= 0

    def certainly_gt(self, other) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._a, other._b) > 0

    def certainly_ge(self, other) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._a, other._b) >= 0

    def overlaps(self, other: "RealInterval") -> bool:
        return mpf_cmp(self._a, other._b) <= 0 and mpf_cmp(other._a, self._b) <= 0

    def hull(self, other: "RealInterval") -> "RealInterval":
        a = self._a if mpf_cmp(self._a, other._a) <= 0 else other._a
        b = self._b if mpf_cmp(self._b, other._b) >= 0 else other._b
        return RealInterval(a, b, max(self.prec, other.prec))

    def intersect(self, other: "RealInterval") -> "RealInterval":
        a = self._a if mpf_cmp(self._a, other._a) >= 0 else other._a
        b = self._b if mpf_cmp(self._b, other._b) <= 0 else other._b
        return RealInterval(a, b, max(self.prec, other.prec))

    def widen(self, eps: Rational) -> "RealInterval":
        e = RealInterval.exact(eps, self.prec)
        return RealInterval(
            libmpf.mpf_sub(self._a, e._b, self.prec, round_floor),
            libmpf.mpf_add(self._b, e._b, self.prec, round_ceiling),
            self.prec,
        )

    # -- arithmetic -----------------------------------------------------
    def _prec2(self, other: "RealInterval") -> int:
        return max(self.prec, other.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec2(other)
        return self._wrap(libmpi.mpi_add(self.mpi, other.mpi, p), p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec2(other)
        return self._wrap(libmpi.mpi_sub(self.mpi, other.mpi, p), p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return RealInterval(libmpf.mpf_neg(self._b), libmpf.mpf_neg(self._a), self.prec)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec2(other)
        return self._wrap(libmpi.mpi_mul(self.mpi, other.mpi, p), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        p = self._prec2(other)
        return self._wrap(libmpi.mpi_div(self.mpi, other.mpi, p), p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RealInterval.exact(1, self.prec) / (self ** (-n))
        return self._wrap(libmpi.mpi_pow_int(self.mpi, n, self.prec), self.prec)

    def __abs__(self):
        return self._wrap(libmpi.mpi_abs(self.mpi, self.prec), self.prec)

    def square(self) -> "RealInterval":
        return self._wrap(libmpi.mpi_square(self.mpi, self.prec), self.prec)

    def sqrt(self) -> "RealInterval":
        if mpf_cmp(self._a, fzero) < 0:
            raise ValueError("square root of an interval with negative part")
        return self._wrap(libmpi.mpi_sqrt(self.mpi, self.prec), self.prec)

    def exp(self) -> "RealInterval":
        return self._wrap(libmpi.mpi_exp(self.mpi, self.prec), self.prec)

    def log(self) -> "RealInterval":
        if mpf_cmp(self._a, fzero) <= 0:
            raise ValueError("logarithm of an interval that is not positive")
        return self._wrap(libmpi.mpi_log(self.mpi, self.prec), self.prec)

    def cos_sin(self) -> Tuple["RealInterval", "RealInterval"]:
        c, s = libmpi.mpi_cos_sin(self.mpi, self.prec)
        return self._wrap(c, self.prec), self._wrap(s, self.prec)

    def floor_if_decided(self):
        """``floor`` of every point of the interval if they agree, else ``None``."""
        fa = mpf_floor(self._a)
        fb = mpf_floor(self._b)
        if fa != fb:
            return None
        return int(mpf_to_fraction(fa))

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> list:
        return [_dyadic_str(self._a), _dyadic_str(self._b)]

    def __repr__(self) -> str:
        lo = libmpf.to_str(self._a, 12)
        hi = libmpf.to_str(self._b, 12)
        return f"RealInterval([{lo}, {hi}])"

    def __eq__(self, other) -> bool:
        return isinstance(other, RealInterval) and self._a == other._a and self._b == other._b

    def __hash__(self) -> int:
        return hash((self._a, self._b))


def atan2(y: RealInterval, x: RealInterval) -> RealInterval:
    p = max(y.prec, x.prec)
    a, b = libmpi.mpi_atan2(y.mpi, x.mpi, p)
    return RealInterval(a, b, p)


class ComplexBox:
    """Rectangle ``re + i*im`` enclosing a complex number."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealInterval, im: RealInterval | None = None):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im if im is not None else RealInterval.exact(0, re.prec))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexBox is immutable")

    def __reduce__(self):
        return (ComplexBox, (self.re, self.im))

    @classmethod
    def exact(cls, q: Rational, prec: int = DEFAULT_PREC) -> "ComplexBox":
        return cls(RealInterval.exact(q, prec), RealInterval.exact(0, prec))

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def is_real(self) -> bool:
        return self.im.is_point() and self.im.sign() == 0

    def conjugate(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def _coerce(self, other) -> "ComplexBox":
        if isinstance(other, ComplexBox):
            return other
        if isinstance(other, RealInterval):
            return ComplexBox(other)
        if isinstance(other, (int, Fraction)):
            return ComplexBox.exact(other, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ComplexBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return ComplexBox(-self.re, -self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = max(self.prec, other.prec)
        re, im = libmpi.mpci_mul((self.re.mpi, self.im.mpi), (other.re.mpi, other.im.mpi), p)
        return ComplexBox(RealInterval(re[0], re[1], p), RealInterval(im[0], im[1], p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = other.re.square() + other.im.square()
        if den.contains_zero():
            raise ZeroDivisionError("complex box divisor may be zero")
        num = self * other.conjugate()
        return ComplexBox(num.re / den, num.im / den)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ComplexBox.exact(1, self.prec) / (self ** (-n))
        result = ComplexBox.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def abs(self) -> RealInterval:
        return (self.re.square() + self.im.square()).sqrt()

    def abs_squared(self) -> RealInterval:
        return self.re.square() + self.im.square()

    def arg(self) -> RealInterval:
        return atan2(self.im, self.re)

    def contains(self, re: Rational, im: Rational = 0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def overlaps(self, other: "ComplexBox") -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"ComplexBox({self.re!r}, {self.im!r})"


def _dist_exact(x: Fraction) -> Fraction:
    f = x - (x.numerator // x.denominator)
    return min(f, 1 - f)


def dist_to_nearest_int(x: Union[Rational, RealInterval]):
    """Distance to the nearest integer.

    Exact (a :class:`Fraction`) for rational input; for an interval, a
    conservative enclosure of the image.  The distance is piecewise linear with
    kinks at integers and half-integers, so extremes sit at endpoints or kinks.
    """
    if not isinstance(x, RealInterval):
        return _dist_exact(Fraction(x))
    lo, hi = x.lower, x.upper
    if hi - lo >= 1:
        return RealInterval.from_bounds(0, Fraction(1, 2), x.prec)
    da, db = _dist_exact(lo), _dist_exact(hi)
    low, high = min(da, db), max(da, db)
    # an integer inside forces the minimum to 0, a half-integer the maximum to 1/2
    n = -((-lo).__floor__())
    if n <= hi:
        low = Fraction(0)
    h = ((lo - Fraction(1, 2)).__ceil__()) + Fraction(1, 2)
    if h <= hi:
        high = Fraction(1, 2)
    return RealInterval.from_bounds(low, high, x.prec)
