"""Matrices of :class:`BiPoly` entries and their exact determinants."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Callable, Sequence

from pentagram.exact.bipoly import BiPoly

CofactorLimit = 6
MaxDetSize = 32


def _poly(x) -> BiPoly:
    return x if isinstance(x, BiPoly) else BiPoly.const(x)


class PolyMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(_poly(e) for e in row) for row in entries)
        if not rows:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self.entries = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int, scale=1) -> "PolyMatrix":
        return cls([[scale if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence) -> "PolyMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyMatrix([[-a for a in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return self.matmul(other)
        return PolyMatrix([[a * other for a in r] for r in self.entries])

    def __rmul__(self, other):
        return PolyMatrix([[a * other for a in r] for r in self.entries])

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            new_row = []
            for col in cols:
                acc = BiPoly.zero()
                for a, b in zip(row, col):
                    if a.terms and b.terms:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return PolyMatrix(out)

    def __pow__(self, exponent: int) -> "PolyMatrix":
        if not self.is_square or exponent < 0:
            raise ValueError("only non-negative powers of square matrices")
        result = PolyMatrix.identity(self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.entries)))

    def map(self, f: Callable[[BiPoly], BiPoly]) -> "PolyMatrix":
        return PolyMatrix([[f(a) for a in r] for r in self.entries])

    def trace(self) -> BiPoly:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        acc = BiPoly.zero()
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def det(self) -> BiPoly:
        return poly_det(self)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = ",\n ".join("[" + ", ".join(repr(e) for e in r) + "]" for r in self.entries)
        return f"PolyMatrix([{body}])"


def matrix_product(mats: Sequence[PolyMatrix]) -> PolyMatrix:
    return reduce(lambda a, b: a @ b, mats)


def _cofactor_det(m: list[list[BiPoly]]) -> BiPoly:
    n = len(m)
    memo: dict[tuple[int, tuple[int, ...]], BiPoly] = {}

    # expand along rows top-down; the remaining columns index the minor
    def minor(row: int, cols: tuple[int, ...]) -> BiPoly:
        if row == n:
            return BiPoly.one()
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = BiPoly.zero()
        for pos, c in enumerate(cols):
            entry = m[row][c]
            if not entry.terms:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub.terms:
                continue
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def _integralize(m: list[list[BiPoly]]) -> tuple[list[list[BiPoly]], Fraction] | None:
    # scale rows to integer coefficients; returns (matrix, product of scales)
    out = []
    scale = Fraction(1)
    for row in m:
        dens = [1]
        for p in row:
            for c in p.terms.values():
                if isinstance(c, Fraction):
                    dens.append(c.denominator)
                elif not isinstance(c, int):
                    return None
        d = lcm(*dens)
        scale *= d
        out.append([BiPoly._raw({e: int(c * d) for e, c in p.terms.items()}) for p in row])
    return out, scale


def _bareiss_det(m: list[list[BiPoly]]) -> BiPoly:
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = BiPoly.one()
    for k in range(n - 1):
        if not a[k][k].terms:
            swap = next((i for i in range(k + 1, n) if a[i][k].terms), None)
            if swap is None:
                return BiPoly.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = pivot * a[i][j]
                if aik.terms and a[k][j].terms:
                    num = num - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if prev.terms != {(0, 0): 1} else num
            a[i][k] = BiPoly.zero()
        prev = pivot
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def poly_det(m: PolyMatrix) -> BiPoly:
    """Exact determinant.

    Cofactor expansion up to size 6, fraction-free (Bareiss) elimination with
    exact polynomial division above that.
    """
    if not m.is_square:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n > MaxDetSize:
        raise ValueError(f"determinant size {n} exceeds {MaxDetSize}")
    rows = [list(r) for r in m.entries]
    if n <= CofactorLimit:
        return _cofactor_det(rows)
    scaled = _integralize(rows)
    if scaled is None:
        return _bareiss_det(rows)
    int_rows, scale = scaled
    det = _bareiss_det(int_rows)
    return BiPoly({e: Fraction(c) / scale for e, c in det.terms.items()})
