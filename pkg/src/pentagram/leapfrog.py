"""Pairs of twisted polygons on the projective line and the leapfrog map.

A state is a pair ``(S^-, S)`` of n-gons in RP^1 sharing one monodromy
``M`` (so ``S_{j+n} = M(S_j)``).  The map sends it to ``(S, S^+)``, where
``S^+_i`` is the image of ``S^-_i`` under the projective involution that
fixes ``S_i`` and swaps ``S_{i-1}`` with ``S_{i+1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from pentagram.dynamics import MapShape, XYState
from pentagram.errors import DegenerateQuadruple, SingularConfiguration
from pentagram.exact.jet import Jet, seed
from pentagram.exact.linalg import det, inverse, matmul
from pentagram.exact.rational import GaussRational
from pentagram.geometry import RP1Point, cross_ratio

IDENTITY = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def _mat(m) -> tuple:
    return tuple(tuple(Fraction(v) for v in row) for row in m)


def _apply(m, p: RP1Point) -> RP1Point:
    return p.moebius(m[0][0], m[0][1], m[1][0], m[1][1])


def _mat_power(m, t: int) -> tuple:
    base = m if t >= 0 else _mat(inverse(m))
    out = IDENTITY
    for _ in range(abs(t)):
        out = _mat(matmul(base, out))
    return out


def _minus(a: RP1Point, b: RP1Point) -> Fraction:
    # a - b in homogeneous form; the a_v b_v factors cancel in every
    # degree-zero expression below
    return a.u * b.v - b.u * a.v


@dataclass(frozen=True)
class LeapfrogState:
    n: int
    S_minus: tuple
    S: tuple
    monodromy: tuple = IDENTITY

    def __post_init__(self):
        object.__setattr__(self, "S_minus", tuple(self.S_minus))
        object.__setattr__(self, "S", tuple(self.S))
        object.__setattr__(self, "monodromy", _mat(self.monodromy))
        if len(self.S_minus) != self.n or len(self.S) != self.n:
            raise ValueError(f"both polygons need n={self.n} vertices")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if det(self.monodromy) == 0:
            raise ValueError("monodromy must be invertible")

    @classmethod
    def from_numbers(cls, S_minus: Sequence, S: Sequence, monodromy=IDENTITY) -> "LeapfrogState":
        return cls(len(S), [RP1Point.finite(v) for v in S_minus],
                   [RP1Point.finite(v) for v in S], monodromy)

    @property
    def closed(self) -> bool:
        m = self.monodromy
        return m[0][1] == 0 and m[1][0] == 0 and m[0][0] == m[1][1]

    def _wrap(self, seq: tuple, j: int) -> RP1Point:
        q, r = divmod(j - 1, self.n)
        p = seq[r]
        return p if q == 0 else _apply(_mat_power(self.monodromy, q), p)

    def minus(self, j: int) -> RP1Point:
        return self._wrap(self.S_minus, j)

    def cur(self, j: int) -> RP1Point:
        return self._wrap(self.S, j)

    def affine(self) -> tuple[list[Fraction], list[Fraction]]:
        """Affine coordinates of both polygons; fails if a vertex is at infinity."""
        out = []
        for seq in (self.S_minus, self.S):
            if any(p.v == 0 for p in seq):
                raise SingularConfiguration("vertex at infinity in the affine chart")
            out.append([p.u / p.v for p in seq])
        return out[0], out[1]

    def violations(self) -> list[int]:
        """Indices where the local rule or the coordinates are undefined."""
        bad = []
        for i in range(1, self.n + 1):
            prev, mid, nxt = self.cur(i - 1), self.cur(i), self.cur(i + 1)
            if prev == nxt or mid in (prev, nxt) or self.minus(i) == mid:
                bad.append(i)
        return bad


def involution_matrix(fixed: RP1Point, a: RP1Point, b: RP1Point) -> tuple:
    """The projective involution fixing ``fixed`` and swapping ``a`` and ``b``.

    Writing ``fixed = mu*a + nu*b`` in homogeneous coordinates, the map
    ``a -> nu^2 b``, ``b -> mu^2 a`` sends ``fixed`` to ``mu*nu*fixed``
    and squares to ``(mu*nu)^2`` times the identity.
    """
    d = a.u * b.v - a.v * b.u
    if d == 0:
        raise SingularConfiguration("the swapped points coincide")
    mu = (fixed.u * b.v - fixed.v * b.u) / d
    nu = (a.u * fixed.v - a.v * fixed.u) / d
    if mu == 0 or nu == 0:
        raise SingularConfiguration("the fixed point coincides with a swapped point")
    basis = ((a.u, b.u), (a.v, b.v))
    local = ((0, mu * mu), (nu * nu, 0))
    return _mat(matmul(matmul(basis, local), inverse(basis)))


def leapfrog_point(prev: RP1Point, mid: RP1Point, nxt: RP1Point, minus: RP1Point) -> RP1Point:
    if minus == mid:
        raise SingularConfiguration("S^-_i coincides with S_i")
    return _apply(involution_matrix(mid, prev, nxt), minus)


def leapfrog_point_affine(prev, mid, nxt, minus):
    """Solve the reciprocal-difference relation for S^+ in an affine chart (oracle)."""
    try:
        rhs = 1 / (nxt - mid) + 1 / (prev - mid) - 1 / (minus - mid)
        return mid + 1 / rhs
    except ZeroDivisionError as exc:
        raise SingularConfiguration("affine leapfrog rule undefined") from exc


def leapfrog_step(st: LeapfrogState) -> LeapfrogState:
    plus = []
    for i in range(1, st.n + 1):
        try:
            plus.append(leapfrog_point(st.cur(i - 1), st.cur(i), st.cur(i + 1), st.minus(i)))
        except SingularConfiguration as exc:
            raise SingularConfiguration(f"index {i}: {exc}") from exc
    return LeapfrogState(st.n, st.S, plus, st.monodromy)


def leapfrog_orbit(st: LeapfrogState, steps: int) -> list[LeapfrogState]:
    out = [st]
    for _ in range(steps):
        out.append(leapfrog_step(out[-1]))
    return out


def men_relations(prev, mid, nxt, minus, plus) -> tuple:
    """(Men1 LHS - RHS, Men2 LHS, Men3 LHS) for affine points.

    On a leapfrog orbit segment these are (0, -1, -1).
    """
    try:
        men1 = (1 / (plus - mid) + 1 / (minus - mid)
                - 1 / (nxt - mid) - 1 / (prev - mid))
        men2 = ((plus - nxt) * (mid - minus) * (mid - prev)
                / ((plus - mid) * (nxt - mid) * (minus - prev)))
        men3 = ((plus - prev) * (mid - minus) * (nxt - mid)
                / ((plus - mid) * (mid - prev) * (minus - nxt)))
    except ZeroDivisionError as exc:
        raise SingularConfiguration("relation denominators vanish") from exc
    return men1, men2, men3


def _xy_at(st: LeapfrogState, i: int) -> tuple[Fraction, Fraction]:
    m0, m1, m2 = st.minus(i), st.minus(i + 1), st.minus(i + 2)
    s1, s2 = st.cur(i + 1), st.cur(i + 2)
    dx = _minus(m0, s1) * _minus(m1, m2)
    dy = _minus(m1, s2) * dx
    if dx == 0 or dy == 0:
        raise SingularConfiguration(f"coordinate denominator vanishes at index {i}")
    x = _minus(s1, m2) * _minus(m0, m1) / dx
    y = _minus(m1, s1) * _minus(m2, s2) * _minus(m0, m1) / dy
    return x, y


def leapfrog_coords(st: LeapfrogState) -> XYState:
    """The (x, y) coordinates of the projective class of ``(S^-, S)``, with k = 2."""
    xs, ys = zip(*(_xy_at(st, i) for i in range(1, st.n + 1)))
    return XYState(MapShape(2, st.n), xs, ys)


def leapfrog_p(st: LeapfrogState, i: int) -> Fraction:
    """p_i as the cross-ratio [S^-_{i+1}, S_{i+1}, S^-_{i+2}, S_{i+2}]."""
    try:
        return cross_ratio(st.minus(i + 1), st.cur(i + 1), st.minus(i + 2), st.cur(i + 2))
    except DegenerateQuadruple as exc:
        raise SingularConfiguration(str(exc)) from exc


def transformed(st: LeapfrogState, g) -> LeapfrogState:
    """Apply the Möbius map ``g`` to both polygons; the monodromy is conjugated."""
    g = _mat(g)
    mono = _mat(matmul(matmul(g, st.monodromy), inverse(g)))
    return LeapfrogState(st.n, [_apply(g, p) for p in st.S_minus],
                         [_apply(g, p) for p in st.S], mono)


def _cyc(seq: Sequence, i: int):
    return seq[(i - 1) % len(seq)]


def lagrangian_residual(prev: Sequence, cur: Sequence, nxt: Sequence) -> list:
    """d/dS_i of L(prev, cur) + L(cur, nxt) for closed affine polygons.

    L(S^-, S) = sum log|S_i - S_{i+1}| - sum log|S_i - S^-_i|; the
    derivative is a sum of reciprocal differences.
    """
    n = len(cur)
    if len(prev) != n or len(nxt) != n:
        raise ValueError("the three polygons must have equal length")
    out = []
    for i in range(1, n + 1):
        s = _cyc(cur, i)
        try:
            out.append(1 / (s - _cyc(cur, i + 1)) + 1 / (s - _cyc(cur, i - 1))
                       + 1 / (_cyc(prev, i) - s) + 1 / (_cyc(nxt, i) - s))
        except ZeroDivisionError as exc:
            raise SingularConfiguration(f"coincident points at index {i}") from exc
    return out


def two_form_value(st: LeapfrogState, u: Sequence, v: Sequence) -> Fraction:
    """omega(u, v) with omega = sum dS^-_i ^ dS_i / (S^-_i - S_i)^2.

    Tangent vectors are ordered (dS^-_1..dS^-_n, dS_1..dS_n).
    """
    n = st.n
    if len(u) != 2 * n or len(v) != 2 * n:
        raise ValueError(f"tangent vectors need length {2 * n}")
    sm, s = st.affine()
    total = Fraction(0)
    for i in range(n):
        d = sm[i] - s[i]
        if d == 0:
            raise SingularConfiguration(f"S^-_{i + 1} coincides with S_{i + 1}")
        total += (u[i] * v[n + i] - v[i] * u[n + i]) / (d * d)
    return total


def _phi_affine(values: Sequence) -> list:
    # Closed-polygon leapfrog on flat coordinates (S^-, S) -> (S, S^+).
    n = len(values) // 2
    sm, s = list(values[:n]), list(values[n:])
    plus = [leapfrog_point_affine(_cyc(s, i - 1), _cyc(s, i), _cyc(s, i + 1), _cyc(sm, i))
            for i in range(1, n + 1)]
    return s + plus


def phi_jacobian(st: LeapfrogState) -> list[list[Fraction]]:
    """Exact Jacobian of the leapfrog map in the flat chart (closed polygons)."""
    if not st.closed:
        raise ValueError("the flat chart needs a closed state")
    sm, s = st.affine()
    out = _phi_affine(seed(sm + s))
    dim = 2 * st.n
    return [list(o.grad) if isinstance(o, Jet) else [Fraction(0)] * dim for o in out]


def two_form_pullback_defect(st: LeapfrogState, u: Sequence, v: Sequence) -> Fraction:
    """omega_{Phi(st)}(DPhi u, DPhi v) - omega_st(u, v); zero when omega is invariant."""
    jac = phi_jacobian(st)
    pu = [sum(a * b for a, b in zip(row, u)) for row in jac]
    pv = [sum(a * b for a, b in zip(row, v)) for row in jac]
    return two_form_value(leapfrog_step(st), pu, pv) - two_form_value(st, u, v)


@dataclass(frozen=True)
class ComplexQuadruple:
    s_prev: GaussRational
    s_mid: GaussRational
    s_next: GaussRational
    s_minus: GaussRational

    def __post_init__(self):
        for name in ("s_prev", "s_mid", "s_next", "s_minus"):
            val = getattr(self, name)
            if not isinstance(val, GaussRational):
                object.__setattr__(self, name, GaussRational(val))

    @classmethod
    def of(cls, *values) -> "ComplexQuadruple":
        return cls(*(v if isinstance(v, GaussRational) else GaussRational(v) for v in values))


def men2_plus(prev, mid, nxt, minus):
    """S^+ from the second relation, which is linear in S^+ (works over any field)."""
    a = (mid - minus) * (mid - prev)
    b = (nxt - mid) * (minus - prev)
    if not (a + b):
        raise SingularConfiguration("second relation does not determine S^+")
    return (nxt * a + mid * b) / (a + b)


def circle_pattern_images(q: ComplexQuadruple) -> tuple:
    """Images of (S_{i-1}, S_{i+1}, S^-_i, S^+_i) under w -> 1/(w - S_i)."""
    mid = q.s_mid
    if mid in (q.s_prev, q.s_next, q.s_minus):
        raise SingularConfiguration("s_mid must differ from the other three points")
    plus = men2_plus(q.s_prev, mid, q.s_next, q.s_minus)
    if plus == mid:
        raise SingularConfiguration("S^+ coincides with S_i")
    return tuple(1 / (w - mid) for w in (q.s_prev, q.s_next, q.s_minus, plus))


def circle_pattern_check(q: ComplexQuadruple) -> bool:
    """In the chart sending S_i to infinity the four points form a parallelogram."""
    a, b, c, d = circle_pattern_images(q)
    return a + b == c + d


def random_leapfrog(n: int, rng: random.Random, closed: bool = True, span: int = 60) -> LeapfrogState:
    """A random generic state with small rational vertices."""
    while True:
        vals = rng.sample(range(-span, span + 1), 2 * n)
        den = rng.randint(1, 7)
        sm = [Fraction(v, den) for v in vals[:n]]
        s = [Fraction(v, den) for v in vals[n:]]
        if closed:
            mono = IDENTITY
        else:
            mono = tuple(tuple(Fraction(rng.randint(-4, 4)) for _ in range(2)) for _ in range(2))
            if det(mono) == 0:
                continue
        st = LeapfrogState.from_numbers(sm, s, mono)
        try:
            if st.violations():
                continue
            leapfrog_coords(st)
            nxt = leapfrog_step(st)
            if nxt.violations():
                continue
            leapfrog_coords(nxt)
        except SingularConfiguration:
            continue
        return st
