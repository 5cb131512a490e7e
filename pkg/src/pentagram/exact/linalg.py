"""Exact linear algebra over the integers and the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def int_matrix_rank(m: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in m]
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, rows):
            arc = a[r][c]
            for j in range(c, cols):
                a[r][j] = (p * a[r][j] - arc * a[rank][j]) // prev
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def rational_rank(m: Sequence[Sequence]) -> int:
    """Rank of a rational matrix (rows are cleared to integers first)."""
    from math import lcm

    int_rows = []
    for row in m:
        row = [Fraction(v) for v in row]
        d = lcm(*(v.denominator for v in row)) if row else 1
        int_rows.append([int(v * d) for v in row])
    return int_matrix_rank(int_rows)


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of a (possibly overdetermined) consistent system.

    Returns None when the system is inconsistent or underdetermined.
    """
    rows = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    if not rows:
        return None
    ncols = len(rows[0]) - 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            return None
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    return [rows[i][-1] for i in range(ncols)]


def nullspace(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix."""
    rows = [[Fraction(v) for v in row] for row in a]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][free]
        basis.append(vec)
    return basis


def det(a: Sequence[Sequence]) -> Fraction:
    rows = [[Fraction(v) for v in row] for row in a]
    n = len(rows)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        pv = rows[c][c]
        result *= pv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [vi - f * vc for vi, vc in zip(rows[i], rows[c])]
    return result


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    rows = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[p] = rows[p], rows[c]
        pv = rows[c][c]
        rows[c] = [v / pv for v in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vc for vi, vc in zip(rows[i], rows[c])]
    return [row[n:] for row in rows]
