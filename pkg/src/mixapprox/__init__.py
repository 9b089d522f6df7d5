"""Algebraic approximation of real algebraic numbers with p-adic control of the approximants."""

__version__ = "0.1.0"

from .catalog import load_catalog, lookup  # noqa: E402
from .field import FieldElement, FieldError, NumberField  # noqa: E402

__all__ = ["__version__", "NumberField", "FieldElement", "FieldError", "load_catalog", "lookup"]
