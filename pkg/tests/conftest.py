import contextlib

import pytest

from mixapprox.catalog import load_catalog, lookup
from mixapprox.construct.pipeline import theorem1_pipeline
from mixapprox.units import find_units


@pytest.fixture(scope="session")
def catalog_fields():
    return {e.name: lookup(e.name)[0] for e in load_catalog()}


@pytest.fixture(scope="session")
def sqrt2_records():
    K, entry = lookup("sqrt2")
    S = find_units(K, 3, entry.known_units)
    return K, list(theorem1_pipeline(K, S, 3, range(0, 6)))


@pytest.fixture(scope="session")
def cbrt2_records():
    K, entry = lookup("cbrt2")
    S = find_units(K, 3, entry.known_units)
    return K, list(theorem1_pipeline(K, S, 5, range(0, 4)))


# -- acceptance reporting ---------------------------------------------------------------
# criterion number -> (title, [(part, passed, note)])
ACCEPTANCE_RESULTS = {}


@contextlib.contextmanager
def acceptance(number, title, part=""):
    """Record the outcome of one criterion (or one part of it) for the end-of-run summary."""
    notes = []
    entry = ACCEPTANCE_RESULTS.setdefault(number, (title, []))
    try:
        yield notes.append
    except BaseException:
        entry[1].append((part, False, "; ".join(notes)))
        raise
    entry[1].append((part, True, "; ".join(notes)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, parts = ACCEPTANCE_RESULTS[number]
        ok = all(p[1] for p in parts)
        detail = " | ".join((f"{name}: " if name else "") + ("ok" if passed else "FAILED") + (f" ({n})" if n else "")
                            for name, passed, n in parts)
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}")
