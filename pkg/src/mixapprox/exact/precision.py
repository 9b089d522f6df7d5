"""Working-precision defaults and the escalation ceiling."""

from __future__ import annotations

import os

DEFAULT_PREC = 128


def _ceiling_from_env() -> int:
    raw = os.environ.get("MIXAPPROX_PREC_CEILING")
    if not raw:
        return 1 << 16
    value = int(raw)
    if value < 64:
        raise ValueError("MIXAPPROX_PREC_CEILING must be at least 64 bits")
    return value


PREC_CEILING = _ceiling_from_env()


class PrecisionCeilingError(ArithmeticError):
    """Escalation reached the configured precision ceiling without deciding."""


class Undecided(Exception):
    """A certified comparison could not be settled; carries a short reason."""


def escalation(start: int = DEFAULT_PREC, ceiling: int | None = None):
    """Yield doubling precisions from ``start`` up to and including the ceiling."""
    top = PREC_CEILING if ceiling is None else ceiling
    prec = max(start, 32)
    while prec < top:
        yield prec
        prec *= 2
    yield top
