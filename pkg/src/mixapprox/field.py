"""Real number fields ``Q(theta)`` with ``theta`` a root of a monic integer polynomial.

Elements live in the power basis ``1, theta, ..., theta^d`` with exact rational
coordinates.  Embeddings are numbered with the distinguished real root first,
then the remaining real roots in increasing order, then one representative of
each conjugate pair (upper half plane) and finally their conjugates in the same
order, so that ``sigma_{r1+r2+j}`` is the conjugate of ``sigma_{r1+j}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exact.interval import ComplexBox, RealInterval
from .exact.linalg import det, inverse
from .exact.poly import IntPolynomial, qxgcd
from .exact.precision import DEFAULT_PREC
from .exact.roots import complex_roots, isolate_real_roots, refine_root
from .exact.textint import int_to_str

Rational = Union[int, Fraction]


class FieldError(ValueError):
    pass


class NumberField:
    """``K = Q(theta)``; ``theta`` is bound to one real root of ``min_poly``.

    ``selected_root_index`` counts real roots in increasing order; ``-1``
    (the default) picks the largest.
    """

    def __init__(self, min_poly: IntPolynomial, selected_root_index: int = -1, name: Optional[str] = None,
                 check_irreducible: bool = True):
        if min_poly.degree < 2:
            raise FieldError("field polynomial must have degree at least 2")
        if min_poly.leading != 1:
            raise FieldError(
                "field polynomial must be monic; substitute theta = a_n * alpha to make the generator integral"
            )
        if check_irreducible:
            from .construct.degree import certify_degree

            verdict = certify_degree(min_poly)
            if verdict is False:
                raise FieldError(f"{min_poly} is reducible over Q")
            if verdict is None:
                raise FieldError(f"could not certify that {min_poly} is irreducible")
        self.min_poly = min_poly
        self.name = name or str(min_poly)
        self.n = min_poly.degree
        self._real_iso = isolate_real_roots(min_poly)
        if not self._real_iso:
            raise FieldError(f"{min_poly} has no real root")
        r1 = len(self._real_iso)
        if not -r1 <= selected_root_index < r1:
            raise FieldError(f"selected root index {selected_root_index} out of range for {r1} real roots")
        self.selected_root_index = selected_root_index % r1
        self.r1 = r1
        self.r2 = (self.n - r1) // 2
        self._lock = threading.Lock()
        self._roots_cache: Dict[int, List[ComplexBox]] = {}
        self._alpha_cache: RealInterval = self._real_iso[self.selected_root_index]
        self._power_sums = _power_sums(min_poly, 2 * self.n)
        self._dual: Optional[List["FieldElement"]] = None

    # -- shape --------------------------------------------------------------
    @property
    def d(self) -> int:
        """Degree of the approximants: ``[K:Q] - 1``."""
        return self.n - 1

    @property
    def signature(self) -> Tuple[int, int]:
        return (self.r1, self.r2)

    @property
    def unit_rank(self) -> int:
        return self.r1 + self.r2 - 1

    def is_real_index(self, j: int) -> bool:
        return j < self.r1

    def conjugate_index(self, j: int) -> int:
        if j < self.r1:
            return j
        if j < self.r1 + self.r2:
            return j + self.r2
        return j - self.r2

    def __repr__(self) -> str:
        return f"NumberField({self.name!r}, signature={self.signature})"

    def describe(self) -> dict:
        return {
            "name": self.name,
            "min_poly": list(self.min_poly.coeffs),
            "degree": self.n,
            "d": self.d,
            "signature": [self.r1, self.r2],
            "unit_rank": self.unit_rank,
            "selected_root_index": self.selected_root_index,
            "alpha": self.alpha(64).to_json(),
        }

    # -- elements ----------------------------------------------------------
    def element(self, coords: Sequence[Rational]) -> "FieldElement":
        c = [Fraction(x) for x in coords]
        if len(c) > self.n:
            return self.from_poly(c)
        return FieldElement(self, tuple(c + [Fraction(0)] * (self.n - len(c))))

    def from_poly(self, coeffs: Sequence[Rational]) -> "FieldElement":
        """Reduce ``sum c_k theta^k`` modulo the minimal polynomial."""
        return FieldElement(self, tuple(Fraction(x) for x in _reduce(list(coeffs), self.min_poly.coeffs)))

    @property
    def one(self) -> "FieldElement":
        return self.element([1])

    @property
    def zero(self) -> "FieldElement":
        return self.element([])

    @property
    def theta(self) -> "FieldElement":
        return self.element([0, 1])

    # -- embeddings --------------------------------------------------------
    def alpha(self, prec: int = DEFAULT_PREC) -> RealInterval:
        """The distinguished real root, refined to width at most ``2**-prec``."""
        target = Fraction(1, 1 << prec)
        with self._lock:
            cur = self._alpha_cache
        if cur.width() <= target:
            return cur.with_prec(max(prec, cur.prec))
        iv = refine_root(self.min_poly, cur, target).with_prec(prec)
        with self._lock:
            if iv.width() < self._alpha_cache.width():
                self._alpha_cache = iv
        return iv

    def roots(self, prec: int = DEFAULT_PREC) -> List[ComplexBox]:
        """Root boxes ``sigma_0(theta), ..., sigma_d(theta)`` of width about ``2**-prec``."""
        with self._lock:
            for p in sorted(self._roots_cache):
                if p >= prec:
                    return self._roots_cache[p]
        boxes = complex_roots(self.min_poly, prec)
        reals, rest = boxes[: self.r1], boxes[self.r1:]
        k = self.selected_root_index
        ordered = [reals[k]] + reals[:k] + reals[k + 1:] + rest
        with self._lock:
            self._roots_cache.setdefault(prec, ordered)
            return self._roots_cache[prec]

    def embed(self, x: "FieldElement", j: int, prec: int = DEFAULT_PREC) -> ComplexBox:
        """Enclosure of ``sigma_j(x)``."""
        if not 0 <= j < self.n:
            raise IndexError(f"embedding index {j} out of range")
        if x.is_rational():
            return ComplexBox(RealInterval.exact(x.coords[0], prec), RealInterval.exact(0, prec))
        work = prec + x.coord_bits() + 16
        root = self.roots(work)[j]
        if j < self.r1:
            root_r = root.re.with_prec(work)
            acc = RealInterval.exact(0, work)
            for c in reversed(x.coords):
                acc = acc * root_r + c
            return ComplexBox(acc, RealInterval.exact(0, work))
        root = ComplexBox(root.re.with_prec(work), root.im.with_prec(work))
        acc = ComplexBox.exact(0, work)
        for c in reversed(x.coords):
            acc = acc * root + c
        return acc

    def embed_real(self, x: "FieldElement", j: int, prec: int = DEFAULT_PREC) -> RealInterval:
        if j >= self.r1:
            raise ValueError("embedding is not real")
        return self.embed(x, j, prec).re

    def embeddings(self, x: "FieldElement", prec: int = DEFAULT_PREC) -> List[ComplexBox]:
        return [self.embed(x, j, prec) for j in range(self.n)]

    def house(self, x: "FieldElement", prec: int = DEFAULT_PREC) -> RealInterval:
        """Enclosure of ``max_j |sigma_j(x)|``."""
        best = None
        for j in range(self.r1 + self.r2):
            a = self.embed(x, j, prec).abs() if j >= self.r1 else abs(self.embed(x, j, prec).re)
            if best is None:
                best = a
            else:
                lo = max(best.lower, a.lower)
                hi = max(best.upper, a.upper)
                best = RealInterval.from_bounds(lo, hi, max(best.prec, a.prec))
        return best

    # -- trace, norm, duality ----------------------------------------------------
    def power_trace(self, k: int) -> Fraction:
        """``Tr(theta^k)`` by Newton's identities."""
        if k >= len(self._power_sums):
            self._power_sums = _power_sums(self.min_poly, k + 1)
        return Fraction(self._power_sums[k])

    def mult_matrix(self, x: "FieldElement") -> List[List[Fraction]]:
        """Matrix of multiplication by ``x``; column ``j`` holds ``x * theta^j``."""
        cols = []
        cur = x
        for _ in range(self.n):
            cols.append(list(cur.coords))
            cur = cur * self.theta
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def trace_matrix(self) -> List[List[Fraction]]:
        return [[self.power_trace(i + j) for j in range(self.n)] for i in range(self.n)]

    def dual_basis(self) -> List["FieldElement"]:
        """``beta_0..beta_d`` with ``Tr(theta^i beta_j) = [i == j]``."""
        if self._dual is None:
            try:
                Tinv = inverse(self.trace_matrix())
            except ZeroDivisionError as exc:  # pragma: no cover - separable fields never hit this
                raise ArithmeticError("trace form is singular; the field polynomial is not separable") from exc
            self._dual = [self.element([Tinv[i][j] for i in range(self.n)]) for j in range(self.n)]
        return list(self._dual)


def _power_sums(f: IntPolynomial, count: int) -> List[int]:
    n = f.degree
    c = f.coeffs  # monic: c[n] == 1
    s = [n]
    for k in range(1, count):
        acc = 0
        for i in range(1, min(k, n) + 1):
            if i == k:
                acc += k * c[n - k]
            else:
                acc += c[n - i] * s[k - i]
        if k > n:
            acc = sum(c[n - i] * s[k - i] for i in range(1, n + 1))
        s.append(-acc)
    return s


def _reduce(coeffs: List, f: Sequence[int]) -> List:
    """Reduce a coefficient list modulo the monic polynomial ``f``."""
    n = len(f) - 1
    out = list(coeffs)
    for k in range(len(out) - 1, n - 1, -1):
        c = out[k]
        if c:
            base = k - n
            for j in range(n):
                if f[j]:
                    out[base + j] -= c * f[j]
        out[k] = 0
    out = out[:n]
    return out + [0] * (n - len(out))


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    coords: Tuple[Fraction, ...]

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        """Integer coordinates, i.e. membership in ``Z[theta]``."""
        return all(c.denominator == 1 for c in self.coords)

    def int_coords(self) -> List[int]:
        if not self.is_integral():
            raise ValueError("element has non-integral coordinates")
        return [int(c) for c in self.coords]

    def coord_bits(self) -> int:
        return max((abs(c.numerator).bit_length() + c.denominator.bit_length() for c in self.coords), default=0)

    def denominator(self) -> int:
        """Least positive ``D`` with ``D * self`` in ``Z[theta]``."""
        den = 1
        for c in self.coords:
            den = den * c.denominator // gcd(den, c.denominator)
        return den

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_integral() and other.is_integral():
            prod = _int_mul(self.int_coords(), other.int_coords(), self.field.min_poly.coeffs)
            return FieldElement(self.field, tuple(Fraction(x) for x in prod))
        a, b = self.coords, other.coords
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.field.from_poly(out)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = qxgcd(list(self.coords), list(self.field.min_poly.coeffs))
        if len(g) != 1:
            raise ArithmeticError("element shares a factor with the field polynomial")
        return self.field.from_poly(s)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        if self.is_integral():
            f = self.field.min_poly.coeffs
            res = _int_pow(self.int_coords(), e, f)
            return FieldElement(self.field, tuple(Fraction(x) for x in res))
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def pow_mod(self, e: int, modulus: int) -> List[int]:
        """Integer coordinates of ``self**e`` reduced modulo ``modulus``."""
        return _int_pow(self.int_coords(), e, self.field.min_poly.coeffs, modulus)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return isinstance(other, FieldElement) and other.field is self.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    # -- invariants --------------------------------------------------------------
    def trace(self) -> Fraction:
        return sum((c * self.field.power_trace(k) for k, c in enumerate(self.coords)), Fraction(0))

    def norm(self) -> Fraction:
        return det(self.field.mult_matrix(self))

    def to_json(self) -> list:
        return [f"{int_to_str(c.numerator)}/{int_to_str(c.denominator)}" for c in self.coords]

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}")
        return "FieldElement(" + (" + ".join(terms) or "0") + ")"


def _int_mul(a: Sequence[int], b: Sequence[int], f: Sequence[int], modulus: Optional[int] = None) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    red = _reduce(out, f)
    if modulus is not None:
        red = [x % modulus for x in red]
    return red


def _int_pow(a: Sequence[int], e: int, f: Sequence[int], modulus: Optional[int] = None) -> List[int]:
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    base = list(a) if modulus is None else [x % modulus for x in a]
    while e:
        if e & 1:
            result = _int_mul(result, base, f, modulus)
        e >>= 1
        if e:
            base = _int_mul(base, base, f, modulus)
    return result
