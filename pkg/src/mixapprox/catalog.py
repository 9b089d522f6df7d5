"""The shipped field catalog and field lookup by name or polynomial."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import List, Optional, Tuple

from .exact.poly import IntPolynomial
from .field import NumberField


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    min_poly: Tuple[int, ...]
    selected_root_index: int = -1
    known_units: Tuple[Tuple[int, ...], ...] = field(default_factory=tuple)

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.min_poly)


def load_catalog(path: Optional[str] = None) -> List[CatalogEntry]:
    if path is None:
        text = resources.files("mixapprox.data").joinpath("fields.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    raw = json.loads(text)
    if raw.get("coefficient_order", "ascending") != "ascending":
        raise ValueError("catalog coefficients must be listed low degree first")
    return [
        CatalogEntry(
            name=e["name"],
            min_poly=tuple(e["min_poly"]),
            selected_root_index=e.get("selected_root_index", -1),
            known_units=tuple(tuple(u) for u in e.get("known_units", [])),
        )
        for e in raw["fields"]
    ]


def lookup(spec: str, root_index: Optional[int] = None) -> Tuple[NumberField, Optional[CatalogEntry]]:
    """Resolve a catalog name, an ASCII polynomial or a coefficient list.

    A polynomial that matches a catalog entry picks up its known units.
    """
    entries = load_catalog()
    entry = next((e for e in entries if e.name == spec), None)
    poly = entry.polynomial() if entry else IntPolynomial.parse(spec)
    if entry is None:
        entry = next((e for e in entries if e.min_poly == poly.coeffs), None)
    idx = root_index if root_index is not None else (entry.selected_root_index if entry else -1)
    K = NumberField(poly, selected_root_index=idx, name=entry.name if entry else str(poly))
    return K, entry
