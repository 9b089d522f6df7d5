"""Exact and certified base arithmetic."""

from .interval import ComplexBox, RealInterval, dist_to_nearest_int
from .padic import PAdicAbs, is_prime, padic_abs, vp
from .poly import IntPolynomial, content_and_primitive, resultant
from .precision import DEFAULT_PREC, PREC_CEILING, PrecisionCeilingError, Undecided
from .roots import complex_roots, isolate_real_roots, refine_root

__all__ = [
    "ComplexBox",
    "RealInterval",
    "dist_to_nearest_int",
    "PAdicAbs",
    "is_prime",
    "padic_abs",
    "vp",
    "IntPolynomial",
    "content_and_primitive",
    "resultant",
    "DEFAULT_PREC",
    "PREC_CEILING",
    "PrecisionCeilingError",
    "Undecided",
    "complex_roots",
    "isolate_real_roots",
    "refine_root",
]
