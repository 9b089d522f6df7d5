"""Approximant construction, Newton polygons and the converse-bound measurements."""

from .degree import certify_degree
from .newton import NewtonPolygon, lemma4_check, newton_polygon, padic_coefficient_profile
from .pipeline import ApproxRecord, build_polynomial, capture_root, derivative_bound, theorem1_pipeline
from .theorem2 import Theorem2Report, gamma_decomposition, kappa_fit, unit_power_records

__all__ = [
    "certify_degree",
    "NewtonPolygon",
    "lemma4_check",
    "newton_polygon",
    "padic_coefficient_profile",
    "ApproxRecord",
    "build_polynomial",
    "capture_root",
    "derivative_bound",
    "theorem1_pipeline",
    "Theorem2Report",
    "gamma_decomposition",
    "kappa_fit",
    "unit_power_records",
]
