"""Continued fractions and brute-force approximation scans."""

from .cf import QuadraticCF, cf_general, cf_quadratic, convergents
from .mixed import ScanRecord, mixed_scan, problem_scan, reduce_records, scan_candidates

__all__ = ["QuadraticCF", "cf_general", "cf_quadratic", "convergents", "ScanRecord", "mixed_scan",
           "problem_scan", "reduce_records", "scan_candidates"]
