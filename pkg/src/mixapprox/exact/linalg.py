"""Exact dense linear algebra over Q (small matrices only)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free Bareiss elimination when entries are integers."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    fr = [[Fraction(x) for x in r] for r in rows]
    den = 1
    for r in fr:
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
    M = [[int(x * den) for x in r] for r in fr]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den**n)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def inverse(rows: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse; raises ``ZeroDivisionError`` for singular input."""
    n = len(rows)
    A = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [r[n:] for r in A]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    inv = inverse(rows)
    return [sum((a * Fraction(b) for a, b in zip(r, rhs)), Fraction(0)) for r in inv]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return [[sum((Fraction(a) * b for a, b in zip(r, col)), Fraction(0)) for col in zip(*B)] for r in A]
