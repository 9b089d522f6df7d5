"""Decimal conversion of very large integers, independent of the interpreter's digit limit."""

from __future__ import annotations

import sys
import threading

_lock = threading.Lock()


def _unlimited(fn, arg):
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None or get() == 0:
        return fn(arg)
    with _lock:
        old = get()
        sys.set_int_max_str_digits(0)
        try:
            return fn(arg)
        finally:
            sys.set_int_max_str_digits(old)


def int_to_str(n: int) -> str:
    return _unlimited(str, int(n))


def str_to_int(s: str) -> int:
    return _unlimited(int, s.strip())
