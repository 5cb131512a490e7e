"""The maps T_k, their inverses, the auxiliary maps D_k and C_k, the
(p, q)-dynamics, index shifts and the pentagram map on corner invariants.

Indices are 1-based and cyclic mod n throughout.  All maps are pure and work
for any scalar type with field arithmetic, so feeding states whose entries
are :class:`~pentagram.exact.jet.Jet` objects yields exact Jacobians.

Shift convention: ``shift(s, t)`` returns the state whose i-th coordinate is
the (i + t)-th coordinate of ``s``.  This is the orientation under which the
identities D_k^2 = S_{r-r'}, S_{r-r'} T°_k D_k = D_k T_k and
F_k = T_k S_{r'+1} hold as stated; the tests pin it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from pentagram.errors import SingularState


@dataclass(frozen=True)
class MapShape:
    k: int
    n: int

    def __post_init__(self):
        if not (2 <= self.k <= self.n):
            raise ValueError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def r(self) -> int:
        return self.k // 2 - 1

    @property
    def rprime(self) -> int:
        return self.k - 2 - self.r

    @property
    def stable(self) -> bool:
        return self.n >= 2 * self.k - 1


def _cyc(seq: Sequence, i: int):
    return seq[(i - 1) % len(seq)]


def _prod(values, one=1):
    out = one
    for v in values:
        out = out * v
    return out


def _nonzero(name: str, values: Sequence, what: str):
    for i, v in enumerate(values, start=1):
        if not v:
            raise SingularState(f"{what}: {name}_{i} = 0", index=i)


@dataclass(frozen=True)
class XYState:
    shape: MapShape
    x: tuple
    y: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        n = self.shape.n
        if len(self.x) != n or len(self.y) != n:
            raise ValueError(f"x and y must have length n={n}")

    @classmethod
    def of(cls, k: int, x: Sequence, y: Sequence) -> "XYState":
        x = [Fraction(v) if isinstance(v, int) else v for v in x]
        y = [Fraction(v) if isinstance(v, int) else v for v in y]
        return cls(MapShape(k, len(x)), tuple(x), tuple(y))

    def xi(self, i: int):
        return _cyc(self.x, i)

    def yi(self, i: int):
        return _cyc(self.y, i)

    def sigma(self, i: int):
        return _cyc(self.x, i) + _cyc(self.y, i)

    @property
    def sigmas(self) -> tuple:
        return tuple(a + b for a, b in zip(self.x, self.y))

    def is_regular(self) -> bool:
        return all(self.x) and all(self.y) and all(self.sigmas)

    def with_shape(self, k: int) -> "XYState":
        return XYState(MapShape(k, self.shape.n), self.x, self.y)

    def coords(self) -> tuple:
        return self.x + self.y


@dataclass(frozen=True)
class PQState:
    shape: MapShape
    p: tuple
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "q", tuple(self.q))
        n = self.shape.n
        if len(self.p) != n or len(self.q) != n:
            raise ValueError(f"p and q must have length n={n}")

    @classmethod
    def of(cls, k: int, p: Sequence, q: Sequence) -> "PQState":
        p = [Fraction(v) if isinstance(v, int) else v for v in p]
        q = [Fraction(v) if isinstance(v, int) else v for v in q]
        return cls(MapShape(k, len(p)), tuple(p), tuple(q))

    def pi(self, i: int):
        return _cyc(self.p, i)

    def qi(self, i: int):
        return _cyc(self.q, i)

    @property
    def level(self):
        return _prod(a * b for a, b in zip(self.p, self.q))

    def with_shape(self, k: int) -> "PQState":
        return PQState(MapShape(k, self.shape.n), self.p, self.q)

    def coords(self) -> tuple:
        return self.p + self.q


@dataclass(frozen=True)
class CornerState:
    X: tuple
    Y: tuple

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(self.X))
        object.__setattr__(self, "Y", tuple(self.Y))
        if len(self.X) != len(self.Y):
            raise ValueError("X and Y must have equal length")

    @property
    def n(self) -> int:
        return len(self.X)

    def is_regular(self) -> bool:
        return all(self.X) and all(self.Y) and all(1 - a * b for a, b in zip(self.X, self.Y))


# ---------------------------------------------------------------------------
# shifts


def shift(s, t: int):
    """Cyclic index shift: coordinate i of the result is coordinate i + t of ``s``."""
    n = s.shape.n if not isinstance(s, CornerState) else s.n
    t %= n

    def rot(seq):
        return tuple(seq[t:] + seq[:t])

    if isinstance(s, XYState):
        return XYState(s.shape, rot(s.x), rot(s.y))
    if isinstance(s, PQState):
        return PQState(s.shape, rot(s.p), rot(s.q))
    if isinstance(s, CornerState):
        return CornerState(rot(s.X), rot(s.Y))
    raise TypeError(f"cannot shift {type(s).__name__}")


def scale(s: XYState, t) -> XYState:
    return XYState(s.shape, tuple(t * v for v in s.x), tuple(t * v for v in s.y))


# ---------------------------------------------------------------------------
# (x, y)-dynamics


def map_T(s: XYState) -> XYState:
    """One step of T_k."""
    k, n, r, rp = s.shape.k, s.shape.n, s.shape.r, s.shape.rprime
    sig = s.sigmas
    _nonzero("sigma", sig, "T_k undefined")
    x = [_cyc(s.x, i - rp - 1) * _cyc(sig, i + r) / _cyc(sig, i - rp - 1) for i in range(1, n + 1)]
    y = [_cyc(s.y, i - rp) * _cyc(sig, i + r + 1) / _cyc(sig, i - rp) for i in range(1, n + 1)]
    return XYState(s.shape, x, y)


def map_T_inv(s: XYState) -> XYState:
    """T_k^{-1}, which coincides with the q-dynamics map T°_k."""
    n, r, rp = s.shape.n, s.shape.r, s.shape.rprime
    x, y = [], []
    for i in range(1, n + 1):
        den = s.xi(i + rp + 1) + s.yi(i + rp)
        if not den:
            raise SingularState("T_k^{-1} undefined", index=i)
        ratio = (s.xi(i - r) + s.yi(i - r - 1)) / den
        x.append(s.xi(i + rp + 1) * ratio)
        y.append(s.yi(i + rp) * ratio)
    return XYState(s.shape, x, y)


map_T_circ = map_T_inv


def _ratio_prod(s: XYState, lo: int, hi: int, one):
    # prod_{j=lo}^{hi} y_j / x_j, empty when hi < lo
    out = one
    for j in range(lo, hi + 1):
        out = out * s.yi(j) / s.xi(j)
    return out


def _one_like(s: XYState):
    v = s.x[0]
    return v * 0 + 1


def map_D(s: XYState) -> XYState:
    """The auxiliary map D_k (squares to the shift S_{r-r'})."""
    n, r, rp = s.shape.n, s.shape.r, s.shape.rprime
    _nonzero("x", s.x, "D_k undefined")
    one = _one_like(s)
    x = [_ratio_prod(s, i - rp, i + r - 1, one) / s.xi(i + r) for i in range(1, n + 1)]
    y = [_ratio_prod(s, i - rp, i + r, one) / s.xi(i + r + 1) for i in range(1, n + 1)]
    return XYState(s.shape, x, y)


def map_D_inv(s: XYState) -> XYState:
    n, r, rp = s.shape.n, s.shape.r, s.shape.rprime
    _nonzero("x", s.x, "D_k^{-1} undefined")
    one = _one_like(s)
    x = [_ratio_prod(s, i - r, i + rp - 1, one) / s.xi(i + rp) for i in range(1, n + 1)]
    y = [_ratio_prod(s, i - r, i + rp, one) / s.xi(i + rp + 1) for i in range(1, n + 1)]
    return XYState(s.shape, x, y)


def map_C(s: XYState) -> XYState:
    """The involution C_k with T_k = C_k o D_k."""
    k, n = s.shape.k, s.shape.n
    _nonzero("x", s.x, "C_k undefined")
    _nonzero("sigma", s.sigmas, "C_k undefined")
    one = _one_like(s)
    x, y = [], []
    for i in range(1, n + 1):
        pre = s.sigma(i - k + 1) / (s.xi(i - k + 1) * s.sigma(i))
        x.append(pre * _ratio_prod(s, i - k + 2, i - 1, one))
        y.append(pre * _ratio_prod(s, i - k + 2, i, one))
    return XYState(s.shape, x, y)


def map_D_kn(s: XYState, k: int | None = None) -> XYState:
    """D_{k,n}: xbar_i = y_{i-r-1}, ybar_i = x_{i-r}; relabels the state with ``k``."""
    k = s.shape.k if k is None else k
    shape = MapShape(k, s.shape.n)
    r = shape.r
    n = shape.n
    return XYState(
        shape,
        [s.yi(i - r - 1) for i in range(1, n + 1)],
        [s.xi(i - r) for i in range(1, n + 1)],
    )


def project_pq(s: XYState) -> PQState:
    """pi_k: p_i = y_i / x_i, q_i = x_{i+r+1} / y_{i+r}."""
    n, r = s.shape.n, s.shape.r
    _nonzero("x", s.x, "projection undefined")
    _nonzero("y", s.y, "projection undefined")
    p = [s.yi(i) / s.xi(i) for i in range(1, n + 1)]
    q = [s.xi(i + r + 1) / s.yi(i + r) for i in range(1, n + 1)]
    return PQState(s.shape, p, q)


# ---------------------------------------------------------------------------
# (p, q)-dynamics


def map_Tbar(s: PQState) -> PQState:
    n, r, rp = s.shape.n, s.shape.r, s.shape.rprime
    for i in range(1, n + 1):
        if not (1 + s.pi(i)):
            raise SingularState("Tbar undefined: 1 + p_i = 0", index=i)
        if not s.pi(i):
            raise SingularState("Tbar undefined: p_i = 0", index=i)
    p, q = [], []
    for i in range(1, n + 1):
        num = (1 + s.pi(i - rp - 1)) * (1 + s.pi(i + r + 1)) * s.pi(i - rp) * s.pi(i + r)
        den = (1 + s.pi(i - rp)) * (1 + s.pi(i + r))
        p.append(s.qi(i) * num / den)
        q.append(1 / s.pi(i + r - rp))
    return PQState(s.shape, p, q)


def map_Tbar_circ(s: PQState) -> PQState:
    """q-dynamics; equals the inverse of :func:`map_Tbar`."""
    n, r, rp = s.shape.n, s.shape.r, s.shape.rprime
    for i in range(1, n + 1):
        if not (1 + s.qi(i)):
            raise SingularState("Tbar° undefined: 1 + q_i = 0", index=i)
        if not s.qi(i):
            raise SingularState("Tbar° undefined: q_i = 0", index=i)
    p, q = [], []
    for i in range(1, n + 1):
        num = (1 + s.qi(i - r)) * (1 + s.qi(i + rp)) * s.qi(i - r - 1) * s.qi(i + rp + 1)
        den = (1 + s.qi(i - r - 1)) * (1 + s.qi(i + rp + 1))
        p.append(1 / s.qi(i - r + rp))
        q.append(s.pi(i) * num / den)
    return PQState(s.shape, p, q)


def map_Dbar(s: PQState) -> PQState:
    n, r, rp = s.shape.n, s.shape.r, s.shape.rprime
    _nonzero("p", s.p, "Dbar undefined")
    _nonzero("q", s.q, "Dbar undefined")
    p = [1 / s.qi(i) for i in range(1, n + 1)]
    q = [1 / s.pi(i + r - rp) for i in range(1, n + 1)]
    return PQState(s.shape, p, q)


def map_Dbar_kn(s: PQState, k: int | None = None) -> PQState:
    """Dbar_{k,n}: pbar_i = q_{i - floor((n + r - r')/2)}, qbar_i = p_i."""
    k = s.shape.k if k is None else k
    shape = MapShape(k, s.shape.n)
    n, r, rp = shape.n, shape.r, shape.rprime
    off = (n + r - rp) // 2
    return PQState(shape, [s.qi(i - off) for i in range(1, n + 1)], list(s.p))


# ---------------------------------------------------------------------------
# pentagram map on corner invariants


def pentagram_corner(s: CornerState) -> CornerState:
    n = s.n
    X, Y = s.X, s.Y
    w = [1 - a * b for a, b in zip(X, Y)]
    for i, v in enumerate(w, start=1):
        if not v:
            raise SingularState("pentagram map undefined: 1 - X_i Y_i = 0", index=i)
    Xs = [_cyc(X, i) * _cyc(w, i - 1) / _cyc(w, i + 1) for i in range(1, n + 1)]
    Ys = [_cyc(Y, i + 1) * _cyc(w, i + 2) / _cyc(w, i) for i in range(1, n + 1)]
    return CornerState(Xs, Ys)


# Cyclic shift relating the two sides of the T_3 / pentagram conjugacy:
# corner_to_xy(shift(pentagram_corner(c), PENTAGRAM_SHIFT)) == map_T(corner_to_xy(c)).
PENTAGRAM_SHIFT = -1


def corner_to_xy(s: CornerState) -> XYState:
    """x_i = Y_i, y_i = -Y_i X_{i+1} Y_{i+1} (k = 3)."""
    if not (all(s.X) and all(s.Y)):
        raise SingularState("corner invariants must be nonzero")
    n = s.n
    x = [_cyc(s.Y, i) for i in range(1, n + 1)]
    y = [-_cyc(s.Y, i) * _cyc(s.X, i + 1) * _cyc(s.Y, i + 1) for i in range(1, n + 1)]
    return XYState(MapShape(3, n), x, y)


def iterate(f: Callable, s, steps: int):
    for _ in range(steps):
        s = f(s)
    return s
