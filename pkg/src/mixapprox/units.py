"""Units of ``Z[theta]``: discovery, independence, p-adic normalisation,
the pigeonhole search for balanced units, and the Peck sequence.

Logarithmic embeddings are always computed from the small base units and
scaled by exponents, so that huge powers never have to be embedded directly.
Embedding indices ``1..r`` (``r`` the unit rank) are the "folded" indices:
the non-distinguished real embeddings followed by one representative of each
conjugate pair.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact.interval import ComplexBox, RealInterval, dist_to_nearest_int
from .exact.padic import is_prime
from .exact.precision import DEFAULT_PREC, PREC_CEILING, Undecided, escalation
from .field import FieldElement, NumberField

Exponents = Tuple[int, ...]


class InsufficientUnits(RuntimeError):
    pass


class SearchFailed(RuntimeError):
    def __init__(self, message: str, near_miss: Optional[Exponents] = None):
        super().__init__(message)
        self.near_miss = near_miss


# -- interval helpers ---------------------------------------------------------------

def _log_abs_box(b: ComplexBox) -> RealInterval:
    if b.is_real():
        return abs(b.re).log()
    return b.abs_squared().log() * Fraction(1, 2)


def _arg_box(b: ComplexBox) -> RealInterval:
    if b.is_real():
        s = b.re.sign()
        if s is None:
            raise Undecided("sign of a real embedding")
        return RealInterval.exact(0, b.prec) if s > 0 else RealInterval.pi(b.prec)
    return b.arg()


def interval_det(M: Sequence[Sequence[RealInterval]]) -> RealInterval:
    """Determinant by cofactor expansion (the matrices here are tiny)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in M[1:]]
        term = M[0][c] * interval_det(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    return total


# -- unit systems ---------------------------------------------------------------------

class UnitSystem:
    """``r`` independent units ``eps_i = sign_i * base_i ** power_i``.

    ``normalized_for`` is the prime used by :func:`normalize_for_p`, if any;
    ``power_M`` holds the multiplicative orders modulo ``p^2`` applied there.
    """

    def __init__(self, field: NumberField, base: Sequence[FieldElement], signs: Sequence[int] = (),
                 powers: Sequence[int] = (), normalized_for: Optional[int] = None, power_M: Sequence[int] = ()):
        self.field = field
        self.base = tuple(base)
        self.signs = tuple(signs) if signs else (1,) * len(self.base)
        self.powers = tuple(powers) if powers else (1,) * len(self.base)
        self.normalized_for = normalized_for
        self.power_M = tuple(power_M) if power_M else (1,) * len(self.base)
        self._units: Optional[Tuple[FieldElement, ...]] = None
        self._inverses: Dict[int, FieldElement] = {}
        self._log_cache: Dict[int, Tuple[list, list]] = {}

    @property
    def r(self) -> int:
        return len(self.base)

    @property
    def units(self) -> Tuple[FieldElement, ...]:
        if self._units is None:
            self._units = tuple(s * (b ** p) for s, b, p in zip(self.signs, self.base, self.powers))
        return self._units

    def unit_inverse(self, i: int) -> FieldElement:
        if i not in self._inverses:
            inv = self.base[i].inverse() ** self.powers[i]
            self._inverses[i] = self.signs[i] * inv
        return self._inverses[i]

    # logs of the base units at every embedding, cached per precision
    def _base_logs(self, prec: int):
        for p in sorted(self._log_cache):
            if p >= prec:
                return self._log_cache[p]
        K = self.field
        logs, args = [], []
        for b in self.base:
            boxes = [K.embed(b, j, prec + 16) for j in range(K.n)]
            logs.append([_log_abs_box(x) for x in boxes])
            args.append([_arg_box(x) for x in boxes])
        self._log_cache[prec] = (logs, args)
        return logs, args

    def log_abs(self, i: int, j: int, prec: int = DEFAULT_PREC) -> RealInterval:
        """``log |sigma_j(eps_i)|``."""
        logs, _ = self._base_logs(prec)
        return logs[i][j] * self.powers[i]

    def arg(self, i: int, j: int, prec: int = DEFAULT_PREC) -> RealInterval:
        """An argument of ``sigma_j(eps_i)`` (not reduced modulo ``2 pi``)."""
        _, args = self._base_logs(prec)
        a = args[i][j] * self.powers[i]
        if self.signs[i] < 0:
            a = a + RealInterval.pi(max(prec, a.prec))
        return a

    def log_matrix(self, prec: int = DEFAULT_PREC) -> List[List[RealInterval]]:
        """``r x r`` matrix ``log |sigma_j(eps_i)|`` for folded ``j = 1..r`` (rows ``i``)."""
        return [[self.log_abs(i, j, prec) for j in range(1, self.r + 1)] for i in range(self.r)]

    # embeddings of products of the units, in log space
    def combo_log_abs(self, exps: Sequence[int], j: int, prec: int = DEFAULT_PREC) -> RealInterval:
        work = prec + max((abs(e).bit_length() for e in exps), default=0) + 8
        acc = RealInterval.exact(0, work)
        for i, e in enumerate(exps):
            if e:
                acc = acc + self.log_abs(i, j, work) * e
        return acc

    def combo_arg(self, exps: Sequence[int], j: int, prec: int = DEFAULT_PREC) -> RealInterval:
        work = prec + max((abs(e).bit_length() for e in exps), default=0) + 8
        acc = RealInterval.exact(0, work)
        for i, e in enumerate(exps):
            if e:
                acc = acc + self.arg(i, j, work) * e
        return acc

    def combo_embed(self, exps: Sequence[int], j: int, prec: int = DEFAULT_PREC) -> ComplexBox:
        """Enclosure of ``sigma_j(prod eps_i^{e_i})``."""
        mod = self.combo_log_abs(exps, j, prec).exp()
        if j < self.field.r1:
            sign = 1
            for i, e in enumerate(exps):
                if e % 2 and self._real_sign(i, j) < 0:
                    sign = -sign
            return ComplexBox(mod if sign > 0 else -mod, RealInterval.exact(0, mod.prec))
        c, s = self.combo_arg(exps, j, prec).cos_sin()
        return ComplexBox(mod * c, mod * s)

    def _real_sign(self, i: int, j: int) -> int:
        _, args = self._base_logs(DEFAULT_PREC)
        base_neg = args[i][j].sign() == 1  # argument pi means negative
        neg = base_neg and self.powers[i] % 2 == 1
        if self.signs[i] < 0:
            neg = not neg
        return -1 if neg else 1

    def combo_element(self, exps: Sequence[int]) -> FieldElement:
        """Exact ``prod eps_i^{e_i}``."""
        out = self.field.one
        for i, e in enumerate(exps):
            if e > 0:
                out = out * (self.units[i] ** e)
            elif e < 0:
                out = out * (self.unit_inverse(i) ** (-e))
        return out

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "base_units": [u.to_json() for u in self.base],
            "signs": list(self.signs),
            "powers": list(self.powers),
            "normalized_for": self.normalized_for,
            "power_M": list(self.power_M),
        }


def _exact_relation(field: NumberField, units: Sequence[FieldElement], prec: int) -> Optional[List[int]]:
    """A nonzero integer vector ``c`` with ``prod units^c = +-1``, if a small one exists."""
    r = field.unit_rank
    k = len(units)
    rows = []
    for u in units:
        rows.append([float(_log_abs_box(field.embed(u, j, prec)).mid()) for j in range(1, r + 1)])
    # candidate relations from rational dependencies of log vectors with small coefficients
    bound = 6
    for c in itertools.product(range(-bound, bound + 1), repeat=k):
        if not any(c) or next(x for x in c if x) < 0:
            continue
        v = [sum(c[i] * rows[i][j] for i in range(k)) for j in range(r)]
        if max((abs(x) for x in v), default=0.0) > 1e-6:
            continue
        prod = field.one
        for u, e in zip(units, c):
            if e:
                prod = prod * (u ** e)
        if prod == 1 or prod == -1:
            return list(c)
    return None


def check_independence(units: Sequence[FieldElement], field: NumberField, ceiling: Optional[int] = None) -> bool:
    """Certified multiplicative independence of the given units.

    Returns ``True`` when some maximal minor of the folded log matrix is
    certified nonzero and ``False`` when an exact multiplicative relation is
    exhibited; raises :class:`Undecided` otherwise.
    """
    r = field.unit_rank
    k = len(units)
    if k == 0:
        return True
    if k > r:
        return False
    for u in units:
        if u == 1 or u == -1:
            return False
    top = PREC_CEILING if ceiling is None else ceiling
    for prec in escalation(DEFAULT_PREC, top):
        M = [[_log_abs_box(field.embed(u, j, prec)) for j in range(1, r + 1)] for u in units]
        for cols in itertools.combinations(range(r), k):
            sub = [[row[c] for c in cols] for row in M]
            if not interval_det(sub).contains_zero():
                return True
        if _exact_relation(field, units, prec) is not None:
            return False
    raise Undecided("log-matrix determinant straddles zero at the precision ceiling")


def _enumerate_candidates(n: int, bound: int):
    vecs = []
    for c in itertools.product(range(-bound, bound + 1), repeat=n):
        nz = [x for x in c if x]
        if not nz or nz[-1] < 0:
            continue
        vecs.append(c)
    vecs.sort(key=lambda c: (max(abs(x) for x in c), sum(abs(x) for x in c), tuple(-x for x in reversed(c))))
    return vecs


def find_units(field: NumberField, coord_bound: int = 2, known_units: Sequence[Sequence[int]] = ()) -> UnitSystem:
    """Greedy selection of ``r`` independent units of ``Z[theta]`` with small coordinates."""
    if coord_bound < 1:
        raise ValueError("coord_bound must be at least 1")
    r = field.unit_rank
    chosen: List[FieldElement] = []
    pool = [tuple(u) for u in known_units] + _enumerate_candidates(field.n, coord_bound)
    seen = set()
    for c in pool:
        if len(chosen) == r:
            break
        x = field.element(c)
        if x.coords in seen or x.is_rational():
            continue
        seen.add(x.coords)
        if abs(x.norm()) != 1:
            continue
        try:
            if check_independence(chosen + [x], field, ceiling=1024):
                chosen.append(x)
        except Undecided:
            continue
    if len(chosen) < r:
        raise InsufficientUnits("insufficient units; raise coord_bound or supply units")
    return UnitSystem(field, chosen)


# -- normalisation modulo p^2 ------------------------------------------------------

def _unit_group_order_mod_p2(field: NumberField, p: int) -> int:
    """``|(Z[theta]/p^2)^x| = p^n * |(F_p[X]/(f mod p))^x|``."""
    from .construct.degree import _mod_gcd, _mod_trim

    n = field.n
    f = _mod_trim([c % p for c in field.min_poly.coeffs])
    count = 0
    for c in itertools.product(range(p), repeat=n):
        a = _mod_trim(list(c))
        if a and len(_mod_gcd(f, a, p)) == 1:
            count += 1
    return p**n * count


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


def order_mod(x: FieldElement, modulus: int, group_order: int) -> int:
    one = [1] + [0] * (x.field.n - 1)
    if x.pow_mod(group_order, modulus) != one:
        raise ArithmeticError("element is not invertible modulo the given modulus")
    order = group_order
    for ell in _prime_factors(group_order):
        while order % ell == 0 and x.pow_mod(order // ell, modulus) == one:
            order //= ell
    return order


def normalize_for_p(sys: UnitSystem, p: int) -> UnitSystem:
    """Make every unit positive at all real embeddings and ``= 1 mod p^2 Z[theta]``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    K = sys.field
    G = _unit_group_order_mod_p2(K, p)
    signs, powers, Ms = [], [], []
    for i, b in enumerate(sys.base):
        real_signs = []
        for j in range(K.r1):
            s = K.embed(b, j, DEFAULT_PREC).re.sign()
            if s is None or s == 0:
                raise Undecided("sign of a real conjugate")
            real_signs.append(s)
        if all(s == real_signs[0] for s in real_signs):
            sign, power = real_signs[0], 1
        else:
            sign, power = 1, 2
        eps = sign * (b ** power)
        M = order_mod(eps, p * p, G)
        signs.append(sign if M % 2 else 1)
        powers.append(power * M)
        Ms.append(M)
    out = UnitSystem(K, sys.base, signs, powers, normalized_for=p, power_M=Ms)
    for u in out.units:
        if any(c % (p * p) for c in (u - 1).int_coords()):
            raise AssertionError("normalised unit is not 1 modulo p^2")
    return out


# -- the pigeonhole search ---------------------------------------------------------

@dataclass(frozen=True)
class SearchParams:
    s: int
    delta: Fraction
    C1: Fraction
    C2: Fraction
    M_bound: int

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.M_bound < 1:
            raise ValueError("M_bound must be at least 1")


def constraint_shape(field: NumberField) -> Tuple[List[int], List[int]]:
    """Folded indices carrying a modulus constraint (``Y_j``) and an angle constraint (``Z_k``)."""
    r = field.unit_rank
    ys = list(range(2, r + 1))
    zs = list(range(field.r1, r + 1))
    return ys, zs


def box_tolerances(field: NumberField, delta: Fraction) -> Tuple[Fraction, Fraction]:
    """Rational ``C1, C2`` for which ``|Y_j| <= C1`` and ``||Z_k|| <= C2`` force
    ``|sigma_j(eta)/sigma_1(eta) - 1| <= delta`` for ``2 <= j <= d``.

    The ratio is ``exp(x + i phi)`` with ``|x|`` bounded by ``C1`` and ``|phi|`` by
    ``4 pi C2``; ``|exp(x + i phi) - 1| <= (e^|x| - 1) + e^|x| |phi|``.  We use
    ``log(1 + t) >= t - t^2/2`` and ``8 pi < 26`` to keep both tolerances rational.
    """
    delta = Fraction(delta)
    ys, zs = constraint_shape(field)
    if ys and zs:
        t = delta / 3
        return t - t * t / 2, delta / 26
    if ys:
        return delta - delta * delta / 2, delta / 13
    return delta - delta * delta / 2, delta / 13


def default_M_bound(sys: UnitSystem, p: int, s: int, C1: Fraction, C2: Fraction) -> int:
    """Smallest power of two ``M`` for which the pigeonhole count beats ``M^r``."""
    ys, zs = constraint_shape(sys.field)
    r = sys.r
    coef = []
    for j in ys:
        coef.append(sum(abs(float(sys.log_abs(i, 1) - sys.log_abs(i, j))) for i in range(r)))
    M = 1
    while True:
        cells = 1
        for a in coef:
            cells *= math.ceil(p**s * M * a / float(C1)) + 1
        cells *= math.ceil(1 / float(C2)) ** len(zs)
        if cells < M**r:
            return M
        M *= 2


@dataclass
class UnitCandidate:
    system: UnitSystem
    p: int
    s: int
    mu: Exponents
    exponents: Exponents  # relative to ``system.units``, including p^s and inversion
    inverted: bool
    eta: Optional[FieldElement] = None
    N: Optional[RealInterval] = None
    Y: List[RealInterval] = field(default_factory=list)
    Z: List[RealInterval] = field(default_factory=list)
    method: str = "direct"

    def log_abs(self, j: int, prec: int = DEFAULT_PREC) -> RealInterval:
        return self.system.combo_log_abs(self.exponents, j, prec)

    def embed(self, j: int, prec: int = DEFAULT_PREC) -> ComplexBox:
        return self.system.combo_embed(self.exponents, j, prec)

    def element(self) -> FieldElement:
        if self.eta is None:
            object.__setattr__(self, "eta", self.system.combo_element(self.exponents))
        return self.eta


class _Forms:
    """Float and interval versions of the linear forms ``Y_j`` and ``Z_k``."""

    def __init__(self, sys: UnitSystem, p: int, s: int, prec: int):
        self.sys, self.p, self.s = sys, p, s
        self.ys, self.zs = constraint_shape(sys.field)
        ps = p**s
        self.prec = prec + ps.bit_length() + 16
        r = sys.r
        two_pi = RealInterval.pi(self.prec) * 2
        self.yI = [[(sys.log_abs(i, 1, self.prec) - sys.log_abs(i, j, self.prec)) * ps for i in range(r)] for j in self.ys]
        self.zI = [[sys.arg(i, k, self.prec) * ps / two_pi for i in range(r)] for k in self.zs]
        # floats reduced mod 1 before conversion keep the angle forms accurate
        self.yF = [[float(x) for x in row] for row in self.yI]
        self.zF = [[float(x - x.floor_if_decided()) if x.floor_if_decided() is not None else float(x) % 1.0
                    for x in row] for row in self.zI]

    def float_values(self, mu: Sequence[int]):
        y = [sum(c * m for c, m in zip(row, mu)) for row in self.yF]
        z = [sum(c * m for c, m in zip(row, mu)) % 1.0 for row in self.zF]
        return y, z

    def certify(self, mu: Sequence[int], C1: Fraction, C2: Fraction):
        """``(ok, Y, Z)``; ``ok`` is ``True``/``False`` when decided, ``None`` otherwise."""
        Y = [sum((c * m for c, m in zip(row, mu)), RealInterval.exact(0, self.prec)) for row in self.yI]
        Z = [sum((c * m for c, m in zip(row, mu)), RealInterval.exact(0, self.prec)) for row in self.zI]
        ok = True
        for y in Y:
            a = abs(y)
            if a.certainly_le(C1):
                continue
            if a.certainly_gt(C1):
                return False, Y, Z
            ok = None
        for z in Z:
            dz = dist_to_nearest_int(z)
            if dz.certainly_le(C2):
                continue
            if dz.certainly_gt(C2):
                return False, Y, Z
            ok = None
        return ok, Y, Z


def _float_ok(forms: _Forms, mu, C1f: float, C2f: float, slack: float = 1e-9) -> bool:
    y, z = forms.float_values(mu)
    return all(abs(v) <= C1f + slack for v in y) and all(min(v, 1 - v) <= C2f + slack for v in z)


def _certify_escalating(sys, p, s, mu, C1, C2, prec):
    for pr in escalation(prec):
        ok, Y, Z = _Forms(sys, p, s, pr).certify(mu, C1, C2)
        if ok is not None:
            return ok, Y, Z
    raise Undecided(f"box constraints undecided for mu={tuple(mu)}")


def _scan_range(forms: _Forms, sys, p, s, params: SearchParams, first_range: range, prec: int, lo: int = 0):
    """Lexicographically least certified ``mu`` with ``mu_1`` in ``first_range``.

    The other coordinates run over ``[lo, M)``.  When a modulus constraint is
    present, the last coordinate is confined by ``|Y_2| <= C1`` to a short
    interval that is solved for rather than enumerated.
    """
    r = sys.r
    M = params.M_bound
    C1f, C2f = float(params.C1), float(params.C2)
    slice_coef = forms.yF[0][-1] if forms.yF and r > 1 else 0.0
    for m1 in first_range:
        prefixes = itertools.product(*([range(lo, M)] * (r - 2))) if r > 1 else [()]
        for mid in prefixes:
            head = (m1,) + tuple(mid)
            if r == 1:
                tails = [()]
            elif abs(slice_coef) > 1e-12:
                partial = sum(c * m for c, m in zip(forms.yF[0][:-1], head))
                a = (-C1f - 1e-6 - partial) / slice_coef
                b = (C1f + 1e-6 - partial) / slice_coef
                a, b = min(a, b), max(a, b)
                start, stop = max(lo, math.ceil(a)), min(M - 1, math.floor(b))
                tails = [(t,) for t in range(start, stop + 1)]
            else:
                tails = [(t,) for t in range(lo, M)]
            for tail in tails:
                mu = head + tail
                if not any(mu):
                    continue
                if not _float_ok(forms, mu, C1f, C2f):
                    continue
                ok, Y, Z = _certify_escalating(sys, p, s, mu, params.C1, params.C2, prec)
                if ok:
                    return mu, Y, Z
    return None


PIGEONHOLE_POINTS = 1 << 21


def lemma3_search(sys: UnitSystem, params: SearchParams, p: Optional[int] = None, prec: int = DEFAULT_PREC,
                  jobs: int = 1, materialize: bool = True) -> UnitCandidate:
    """Find ``mu != 0`` with the balanced-conjugate box constraints and build ``eta``.

    ``eta = (prod eps_i^{mu_i})^{p^s}``, inverted when needed so ``0 < eta < 1``.
    The direct search scans ``[0, M)^r`` lexicographically; partitions over the
    first coordinate are reduced to the global lexicographic minimum.  When it
    finds nothing, points are bucketed by their ``(Y, Z)`` cell and the first
    colliding pair yields a difference vector; for boxes too large to bucket,
    the symmetric box ``(-M, M)^r`` holding all difference vectors is scanned.
    """
    p = p if p is not None else sys.normalized_for
    if p is None:
        raise ValueError("a prime is required (normalise the unit system first)")
    s = params.s
    forms = _Forms(sys, p, s, prec)
    M = params.M_bound
    hit = None
    if jobs <= 1:
        hit = _scan_range(forms, sys, p, s, params, range(M), prec)
    else:
        chunks = [range(k, min(M, k + max(1, M // jobs))) for k in range(0, M, max(1, M // jobs))]
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(lambda rg: _scan_range(forms, sys, p, s, params, rg, prec), chunks))
        found = [x for x in results if x is not None]
        hit = min(found, key=lambda t: t[0]) if found else None
    method = "direct"
    if hit is None:
        if M**sys.r <= PIGEONHOLE_POINTS:
            hit = _pigeonhole(forms, sys, p, s, params, prec)
            method = "pigeonhole"
        else:
            # every difference vector of the covering argument lies in (-M, M)^r
            hit = _scan_range(forms, sys, p, s, params, range(-M + 1, M), prec, lo=-M + 1)
            method = "difference-box"
            if hit is None:
                raise SearchFailed(f"no admissible exponent vector in (-M, M)^r for M = {M}")
    mu, Y, Z = hit
    return _make_candidate(sys, p, s, mu, Y, Z, method, prec, materialize)


def _pigeonhole(forms: _Forms, sys, p, s, params: SearchParams, prec: int):
    C1f, C2f = float(params.C1), float(params.C2)
    cells: Dict[tuple, Exponents] = {}
    best = None
    for mu in itertools.product(range(params.M_bound), repeat=sys.r):
        y, z = forms.float_values(mu)
        key = tuple(math.floor(v / C1f) for v in y) + tuple(math.floor(v / C2f) for v in z)
        if key in cells:
            diff = tuple(a - b for a, b in zip(mu, cells[key]))
            ok, Y, Z = _certify_escalating(sys, p, s, diff, params.C1, params.C2, prec)
            if ok:
                return diff, Y, Z
            best = best or diff
        else:
            cells[key] = mu
    raise SearchFailed(f"no admissible exponent vector below M = {params.M_bound}", near_miss=best)


def _make_candidate(sys, p, s, mu, Y, Z, method, prec, materialize=True) -> UnitCandidate:
    ps = p**s
    exps = tuple(m * ps for m in mu)
    l0 = sys.combo_log_abs(exps, 0, prec)
    sgn = l0.sign()
    if sgn is None or sgn == 0:
        raise Undecided("cannot decide whether eta exceeds 1")
    inverted = sgn > 0
    if inverted:
        exps = tuple(-e for e in exps)
        l0 = -l0
    cand = UnitCandidate(sys, p, s, tuple(mu), exps, inverted, None, (-l0).exp(), Y, Z, method)
    if materialize:
        cand.element()
    return cand


# -- Peck sequence -------------------------------------------------------------------

def positive_units(sys: UnitSystem) -> UnitSystem:
    """Flip signs so that each unit is positive at the distinguished embedding."""
    K = sys.field
    signs = []
    for b in sys.base:
        s = K.embed(b, 0, DEFAULT_PREC).re.sign()
        if s is None or s == 0:
            raise Undecided("sign of a unit")
        signs.append(s)
    return UnitSystem(K, sys.base, signs, (1,) * sys.r)


@dataclass
class PeckTerm:
    m: int
    nu: List[RealInterval]
    mu: Exponents
    eta: FieldElement


def peck_sequence(sys: UnitSystem, m: int, prec: int = DEFAULT_PREC) -> PeckTerm:
    """``eta_m = prod eps_i^{mu_i}`` with ``eta_m ~ e^{-dm}`` and the other conjugates ``~ e^m``.

    Solves the folded system ``sum_i nu_i log|sigma_j(eps_i)| = m`` for
    ``j = 1..r`` by Cramer's rule in interval arithmetic and rounds each
    ``nu_i`` to the nearest integer.  The caller's units must be positive at the
    distinguished embedding (see :func:`positive_units`).
    """
    r = sys.r
    if m == 0:
        return PeckTerm(0, [RealInterval.exact(0, prec)] * r, (0,) * r, sys.field.one)
    for pr in escalation(prec):
        L = [[sys.log_abs(i, j, pr) for i in range(r)] for j in range(1, r + 1)]  # rows j, columns i
        D = interval_det(L)
        if D.contains_zero():
            continue
        nu = []
        for i in range(r):
            Li = [row[:i] + [RealInterval.exact(m, pr)] + row[i + 1:] for row in L]
            nu.append(interval_det(Li) / D)
        mus = []
        for v in nu:
            f = (v + Fraction(1, 2)).floor_if_decided()
            if f is None:
                break
            mus.append(f)
        if len(mus) == r:
            return PeckTerm(m, nu, tuple(mus), sys.combo_element(mus))
    raise Undecided("Peck system could not be solved and rounded at the precision ceiling")
