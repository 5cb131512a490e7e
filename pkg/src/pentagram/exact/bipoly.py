"""Sparse polynomials in two variables (lambda, z).

Terms are stored as ``{(deg_lambda, deg_z): coefficient}`` with zero
coefficients never stored.  Coefficients only need ring arithmetic, so the
same class carries Fractions, ints or :class:`~pentagram.exact.jet.Jet`
values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from pentagram.errors import ExactDivisionFailure

Exponent = tuple[int, int]


def _cdiv(a, b):
    # keeps integer coefficients integral when the quotient is exact
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return a / b


class BiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent in BiPoly")
                if c:
                    clean[(i, j)] = c
        self.terms = clean

    # constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict) -> "BiPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c, i: int = 0, j: int = 0) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def lam(cls) -> "BiPoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def z(cls) -> "BiPoly":
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "BiPoly":
        return cls._raw({(0, 0): Fraction(1)})

    # queries ------------------------------------------------------------

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), 0)

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree_lambda(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_z(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def leading(self) -> tuple[Exponent, object]:
        """Leading term in lex order (lambda first)."""
        e = max(self.terms)
        return e, self.terms[e]

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            if not other:
                return BiPoly._raw({})
            return BiPoly._raw({e: c * other for e, c in self.terms.items() if c * other})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return BiPoly._raw({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("BiPoly has no negative powers")
        result = BiPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, di: int = 0, dj: int = 0) -> "BiPoly":
        """Multiply by ``lambda**di * z**dj``."""
        return BiPoly({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Quotient of an exact division; raises if a remainder survives."""
        if isinstance(other, BiPoly):
            if not other.terms:
                raise ZeroDivisionError("division by the zero polynomial")
            if len(other.terms) == 1:
                ((di, dj), dc), = other.terms.items()
                out = {}
                for (i, j), c in self.terms.items():
                    if i < di or j < dj:
                        raise ExactDivisionFailure("monomial does not divide")
                    out[(i - di, j - dj)] = _cdiv(c, dc)
                return BiPoly._raw(out)
        else:
            return BiPoly._raw({e: _cdiv(c, other) for e, c in self.terms.items()})
        (li, lj), lc = other.leading()
        rem = dict(self.terms)
        quot = {}
        while rem:
            (ri, rj) = max(rem)
            rc = rem[(ri, rj)]
            qi, qj = ri - li, rj - lj
            if qi < 0 or qj < 0:
                raise ExactDivisionFailure("polynomial division is not exact")
            qc = _cdiv(rc, lc)
            quot[(qi, qj)] = qc
            for (oi, oj), oc in other.terms.items():
                e = (oi + qi, oj + qj)
                v = rem.get(e, 0) - qc * oc
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return BiPoly._raw(quot)

    def map_coeffs(self, f) -> "BiPoly":
        return BiPoly({e: f(c) for e, c in self.terms.items()})

    def scale_lambda(self, factor) -> "BiPoly":
        """Substitute ``lambda -> factor * lambda``."""
        return BiPoly({(i, j): c * factor**i for (i, j), c in self.terms.items()})

    def evaluate(self, lam, z):
        total = 0
        for (i, j), c in self.terms.items():
            total = total + c * lam**i * z**j
        return total

    # comparison / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "BiPoly(0)"
        parts = []
        for (i, j) in sorted(self.terms):
            c = self.terms[(i, j)]
            mono = "".join(
                s for s in (
                    "" if i == 0 else ("λ" if i == 1 else f"λ^{i}"),
                    "" if j == 0 else ("z" if j == 1 else f"z^{j}"),
                )
            )
            parts.append(f"({c}){mono}" if mono else f"({c})")
        return "BiPoly(" + " + ".join(parts) + ")"


def bipoly_sum(polys: Iterable[BiPoly]) -> BiPoly:
    out: dict = {}
    for p in polys:
        for e, c in p.terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
    return BiPoly._raw({e: c for e, c in out.items() if c})
