"""Forward-mode differentiation with exact rational values.

A :class:`Jet` carries a value and its gradient with respect to ``m``
ambient variables.  Any code written against plain field arithmetic
(``+ - * /`` and integer powers) can be fed jets and returns the exact
Jacobian alongside the result.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from pentagram.errors import SingularState


class Jet:
    __slots__ = ("value", "grad")

    def __init__(self, value, grad: Sequence):
        self.value = value
        self.grad = tuple(grad)

    @classmethod
    def variable(cls, value, index: int, dim: int) -> "Jet":
        zero = Fraction(0)
        grad = [zero] * dim
        grad[index] = Fraction(1)
        return cls(Fraction(value), grad)

    @classmethod
    def constant(cls, value, dim: int) -> "Jet":
        return cls(value, (Fraction(0),) * dim)

    @property
    def dim(self) -> int:
        return len(self.grad)

    def _coerce(self, other):
        if isinstance(other, Jet):
            if len(other.grad) != len(self.grad):
                raise ValueError("jets of different dimension")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return Jet(self.value + other, self.grad)
        return Jet(self.value + o.value, [a + b for a, b in zip(self.grad, o.grad)])

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, [-a for a in self.grad])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return Jet(self.value - other, self.grad)
        return Jet(self.value - o.value, [a - b for a, b in zip(self.grad, o.grad)])

    def __rsub__(self, other):
        return Jet(other - self.value, [-a for a in self.grad])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return Jet(self.value * other, [a * other for a in self.grad])
        u, v = self.value, o.value
        return Jet(u * v, [a * v + u * b for a, b in zip(self.grad, o.grad)])

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        if self.value == 0:
            raise SingularState("jet reciprocal at a zero value")
        inv = 1 / Fraction(self.value) if isinstance(self.value, int) else 1 / self.value
        scale = -inv * inv
        return Jet(inv, [a * scale for a in self.grad])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if other == 0:
                raise SingularState("jet division by zero")
            return Jet(self.value / other, [a / other for a in self.grad])
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("only integer powers of jets are supported")
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = Jet.constant(Fraction(1), self.dim)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.value == other.value and self.grad == other.grad
        return self.value == other and not any(self.grad)

    def __hash__(self):
        return hash((self.value, self.grad))

    def __bool__(self):
        return bool(self.value) or any(self.grad)

    def __repr__(self):
        return f"Jet({self.value}, {list(self.grad)})"


def value_of(x):
    return x.value if isinstance(x, Jet) else x


def grad_of(x, dim: int):
    if isinstance(x, Jet):
        return x.grad
    return (Fraction(0),) * dim


def seed(point: Sequence) -> list[Jet]:
    """Independent variables at ``point``, one jet per coordinate."""
    dim = len(point)
    return [Jet.variable(v, i, dim) for i, v in enumerate(point)]


def jet_eval(f: Callable, point: Sequence) -> Jet:
    """Evaluate ``f(*variables)`` on jets seeded at ``point``.

    Raises :class:`SingularState` when ``f`` divides by zero at the point.
    """
    args = seed(point)
    try:
        out = f(*args)
    except ZeroDivisionError as exc:
        raise SingularState(f"pole at evaluation point: {exc}") from exc
    if not isinstance(out, Jet):
        out = Jet.constant(Fraction(out), len(point))
    return out


def jacobian(f: Callable, point: Sequence) -> tuple[list, list[tuple]]:
    """Values and gradient rows of a vector-valued ``f(point_list)``."""
    args = seed(point)
    outs = f(args)
    dim = len(point)
    return [value_of(o) for o in outs], [grad_of(o, dim) for o in outs]
