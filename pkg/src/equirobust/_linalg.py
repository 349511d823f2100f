"""Exact Gaussian elimination over Fractions."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = ["row_echelon", "rank", "solve_linear", "primitive_int_vector"]


def row_echelon(rows):
    """Return ``(reduced_rows, pivot_columns)`` of the reduced row echelon form."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows) -> int:
    return len(row_echelon(rows)[1])


def solve_linear(A, b):
    """Solve ``A x = b`` exactly. Returns the unique solution or raises.

    Raises ``ValueError`` when the system is inconsistent or underdetermined.
    """
    if not A:
        raise ValueError("empty system")
    n = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    red, pivots = row_echelon(aug)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < n:
        raise ValueError("linear system does not have a unique solution")
    x = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def primitive_int_vector(values) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to coprime integers."""
    fracs = [Fraction(v) for v in values]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)
