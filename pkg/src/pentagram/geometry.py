"""Corrugated twisted polygons in projective space and their (x, y) chart.

Exact lifts are stored as ``n`` vectors plus a monodromy matrix ``M`` with
``V_{i+n} = M V_i``; vertex access for any integer index applies powers of
``M``.  Plane reconstruction from (x, y) needs eigenvectors and is the one
floating-point part, run in mpmath and rounded to numpy arrays at the end.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

import mpmath
import numpy as np

from pentagram.dynamics import MapShape, PQState, XYState
from pentagram.errors import (
    BranchUnavailable,
    DegeneratePolygon,
    DegenerateQuadruple,
    StateFormatError,
    ToleranceExceeded,
)
from pentagram.exact.linalg import det, inverse, matmul, matvec, nullspace, rational_rank, solve
from pentagram.exact.rational import as_rational, format_rational

Vector = tuple
Matrix = tuple

DEFAULT_RTOL = 1e-8
WORKING_DPS = 40


def _frac_vec(v) -> Vector:
    return tuple(Fraction(a) for a in v)


def _identity(k: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def _columns(vectors: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in zip(*vectors)]


def projectively_equal(u: Sequence, v: Sequence) -> bool:
    """True when u and v are nonzero and all 2x2 minors of [u v] vanish."""
    if not any(u) or not any(v):
        return False
    m = len(u)
    return all(u[a] * v[b] == u[b] * v[a] for a in range(m) for b in range(a + 1, m))


# ---------------------------------------------------------------------------
# lifted polygons


@dataclass
class LiftedPolygon:
    shape: MapShape
    vertices: tuple
    monodromy: tuple
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        k, n = self.shape.k, self.shape.n
        self.vertices = tuple(_frac_vec(v) for v in self.vertices)
        self.monodromy = tuple(_frac_vec(r) for r in self.monodromy)
        if len(self.vertices) != n or any(len(v) != k for v in self.vertices):
            raise ValueError(f"expected {n} vertices of length {k}")
        if len(self.monodromy) != k or any(len(r) != k for r in self.monodromy):
            raise ValueError(f"monodromy must be {k}x{k}")

    @property
    def k(self) -> int:
        return self.shape.k

    @property
    def n(self) -> int:
        return self.shape.n

    def _power(self, m: int):
        if m not in self._powers:
            if m == 0:
                self._powers[0] = _identity(self.k)
            elif m > 0:
                self._powers[m] = matmul(self.monodromy, self._power(m - 1))
            else:
                if -1 not in self._powers:
                    try:
                        self._powers[-1] = inverse(self.monodromy)
                    except ZeroDivisionError:
                        raise DegeneratePolygon("monodromy is singular") from None
                self._powers[m] = matmul(self._powers[-1], self._power(m + 1))
        return self._powers[m]

    def vertex(self, j: int) -> Vector:
        """Lift of V_j for any integer j (1-based)."""
        m, rem = divmod(j - 1, self.n)
        base = self.vertices[rem]
        return base if m == 0 else tuple(matvec(self._power(m), base))

    def rescaled(self, factors: Sequence) -> "LiftedPolygon":
        vs = [tuple(f * a for a in v) for f, v in zip(factors, self.vertices)]
        return LiftedPolygon(self.shape, tuple(vs), self.monodromy)


def polygon_from_xy(s: XYState) -> LiftedPolygon:
    """Run V_{i+k} = y_{i-1} V_i + x_i V_{i+1} + V_{i+k-1} from the standard frame."""
    k, n = s.shape.k, s.shape.n
    if k < 3:
        raise DegeneratePolygon("corrugated polygons need k >= 3")
    frame = _identity(k)
    V = [None] + [tuple(r) for r in frame]  # V[1..k]
    for i in range(1, n + 1):
        y, x = s.yi(i - 1), s.xi(i)
        V.append(tuple(y * a + x * b + c for a, b, c in zip(V[i], V[i + 1], V[i + k - 1])))
    for i in range(1, n + 1):
        if rational_rank([V[j] for j in range(i, i + k)]) < k:
            raise DegeneratePolygon("consecutive frame became dependent", )
    M = _columns([V[n + j] for j in range(1, k + 1)])
    verts = [V[j] for j in range(1, n + 1)]
    return LiftedPolygon(s.shape, tuple(verts), tuple(tuple(r) for r in M))


def recurrence_coefficients(p: LiftedPolygon, i: int) -> tuple[Fraction, Fraction, Fraction]:
    """(a_{i+k-1}, b_{i+1}, c_i) with V_{i+k} = a V_{i+k-1} + b V_{i+1} + c V_i."""
    k = p.k
    cols = [p.vertex(i + k - 1), p.vertex(i + 1), p.vertex(i)]
    sol = solve([list(r) for r in zip(*cols)], list(p.vertex(i + k)))
    if sol is None:
        raise DegeneratePolygon(f"no corrugation relation at index {i}")
    a, b, c = sol
    if not (a and b and c):
        raise DegeneratePolygon(f"vanishing recurrence coefficient at index {i}")
    return a, b, c


def xy_from_polygon(p: LiftedPolygon) -> XYState:
    k, n = p.k, p.n
    a, b, c = {}, {}, {}
    for i in range(1, n + 1):
        ai, bi, ci = recurrence_coefficients(p, i)
        a[(i + k - 2) % n + 1] = ai
        b[i % n + 1] = bi
        c[(i - 1) % n + 1] = ci

    def get(seq, j):
        return seq[(j - 1) % n + 1]

    x, y = [], []
    for i in range(1, n + 1):
        prod = Fraction(1)
        for j in range(i + 1, i + k):
            prod *= get(a, j)
        x.append(get(b, i + 1) / prod)
        y.append(get(c, i + 1) / (prod * get(a, i + k)))
    return XYState(p.shape, tuple(x), tuple(y))


def corrugation_residual(p: LiftedPolygon) -> Fraction:
    """Largest |4x4 minor| of [V_i, V_{i+1}, V_{i+k-1}, V_{i+k}] over i; zero iff corrugated."""
    k = p.k
    worst = Fraction(0)
    for i in range(1, p.n + 1):
        cols = [p.vertex(i), p.vertex(i + 1), p.vertex(i + k - 1), p.vertex(i + k)]
        rows = [list(r) for r in zip(*cols)]
        for pick in combinations(range(k), 4):
            worst = max(worst, abs(det([rows[t] for t in pick])))
    return worst


# ---------------------------------------------------------------------------
# diagonal maps and duality


def line_intersection(p1, p2, q1, q2) -> Vector:
    """Vector spanning span(p1, p2) ∩ span(q1, q2), from the kernel of [p1 p2 -q1 -q2]."""
    cols = [p1, p2, [-v for v in q1], [-v for v in q2]]
    ker = nullspace([list(r) for r in zip(*cols)])
    if len(ker) != 1:
        raise DegeneratePolygon("lines do not meet in a single point")
    al, be = ker[0][0], ker[0][1]
    out = tuple(al * a + be * b for a, b in zip(p1, p2))
    if not any(out):
        raise DegeneratePolygon("degenerate intersection")
    return out


def normalized_lift(p: LiftedPolygon) -> LiftedPolygon:
    """Rescale the lift so that V_{i+k} = y_{i-1} V_i + x_i V_{i+1} + V_{i+k-1} holds exactly."""
    k, n = p.k, p.n
    a = [recurrence_coefficients(p, i - k + 1)[0] for i in range(1, n + 1)]  # a_1..a_n
    lam = [Fraction(1)]
    for i in range(1, n):
        lam.append(lam[-1] * a[i - 1])
    total = lam[-1] * a[n - 1]
    verts = [tuple(c / l for c in v) for l, v in zip(lam, p.vertices)]
    mono = tuple(tuple(c / total for c in row) for row in p.monodromy)
    return LiftedPolygon(p.shape, tuple(verts), mono)


def map_F(p: LiftedPolygon) -> LiftedPolygon:
    """V'_i = V_{i+k} - x_i V_{i+1} on the normalized lift."""
    k, n = p.k, p.n
    p = normalized_lift(p)
    s = xy_from_polygon(p)
    verts = []
    for i in range(1, n + 1):
        verts.append(tuple(a - s.xi(i) * b for a, b in zip(p.vertex(i + k), p.vertex(i + 1))))
    return LiftedPolygon(p.shape, tuple(verts), p.monodromy)


def map_F_oracle(p: LiftedPolygon) -> LiftedPolygon:
    """Intersections of the diagonals (V_i, V_{i+k-1}) and (V_{i+1}, V_{i+k})."""
    k = p.k
    verts = [line_intersection(p.vertex(i), p.vertex(i + k - 1), p.vertex(i + 1), p.vertex(i + k))
             for i in range(1, p.n + 1)]
    return LiftedPolygon(p.shape, tuple(verts), p.monodromy)


def map_G(p: LiftedPolygon) -> LiftedPolygon:
    """Intersections of the lines (V_i, V_{i+1}) and (V_{i+k-1}, V_{i+k})."""
    k = p.k
    verts = [line_intersection(p.vertex(i), p.vertex(i + 1), p.vertex(i + k - 1), p.vertex(i + k))
             for i in range(1, p.n + 1)]
    return LiftedPolygon(p.shape, tuple(verts), p.monodromy)


def same_polygon(p: LiftedPolygon, q: LiftedPolygon, offset: int = 0) -> bool:
    """Vertexwise projective equality V_i ~ W_{i+offset}."""
    return all(projectively_equal(p.vertex(i), q.vertex(i + offset)) for i in range(1, p.n + 1))


def _hodge(vectors: Sequence[Vector]) -> Vector:
    """Covector w with w . v = det[vectors..., v]."""
    k = len(vectors) + 1
    out = []
    for j in range(k):
        e = [Fraction(int(t == j)) for t in range(k)]
        out.append(det([list(r) for r in zip(*(list(vectors) + [e]))]))
    return tuple(out)


def _adjugate_transpose(m) -> list[list[Fraction]]:
    d = det(m)
    if not d:
        raise DegeneratePolygon("monodromy is singular")
    inv = inverse(m)
    return [[d * inv[j][i] for j in range(len(m))] for i in range(len(m))]


def dualize(p: LiftedPolygon) -> LiftedPolygon:
    """W_i = V_i ∧ ... ∧ V_{i+k-2}, identified with a covector by the volume form."""
    k = p.k
    verts = []
    for i in range(1, p.n + 1):
        w = _hodge([p.vertex(j) for j in range(i, i + k - 1)])
        if not any(w):
            raise DegeneratePolygon(f"vertices {i}..{i + k - 2} do not span a hyperplane")
        verts.append(w)
    mono = _adjugate_transpose([list(r) for r in p.monodromy])
    return LiftedPolygon(p.shape, tuple(verts), tuple(tuple(r) for r in mono))


# ---------------------------------------------------------------------------
# cross-ratios on RP^1


@dataclass(frozen=True)
class RP1Point:
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))
        if not self.u and not self.v:
            raise ValueError("(0 : 0) is not a point of RP^1")

    @classmethod
    def finite(cls, t) -> "RP1Point":
        return cls(t, 1)

    @classmethod
    def infinity(cls) -> "RP1Point":
        return cls(1, 0)

    def __eq__(self, other):
        return isinstance(other, RP1Point) and self.u * other.v == self.v * other.u

    def __hash__(self):
        return hash(self.u / self.v) if self.v else hash("inf")

    def moebius(self, a, b, c, d) -> "RP1Point":
        return RP1Point(a * self.u + b * self.v, c * self.u + d * self.v)


def _minus(a: RP1Point, b: RP1Point) -> Fraction:
    # (a - b) up to the factor 1/(a_v b_v), which cancels in the cross-ratio
    return a.u * b.v - b.u * a.v


def cross_ratio(a: RP1Point, b: RP1Point, c: RP1Point, d: RP1Point) -> Fraction:
    """[a, b, c, d] = (a - b)(c - d) / ((a - d)(b - c))."""
    den = _minus(a, d) * _minus(b, c)
    if not den:
        raise DegenerateQuadruple("cross-ratio denominator vanishes")
    return _minus(a, b) * _minus(c, d) / den


def _on_line(v: Vector, e1: Vector, e2: Vector) -> RP1Point:
    sol = solve([list(r) for r in zip(e1, e2)], list(v))
    if sol is None:
        raise DegeneratePolygon("point is not on the line")
    return RP1Point(sol[0], sol[1])


def cross_ratio_coords(p: LiftedPolygon) -> PQState:
    """(p, q) from collinear quadruples.

    p_i = [V_{i+1}, V'_i, V_{i+k}, V'_{i+1}] on the line (V_{i+1}, V_{i+k}) and
    q_{i-r-1} = [P_i, V_{i+1}, Q_i, V_i] on the line (V_i, V_{i+1}), where V' is
    the image under F, P_i = V_{i+1} - V_i and Q_i = x_i V_{i+1} + y_{i-1} V_i.
    """
    shape = p.shape
    k, n, r = shape.k, shape.n, shape.r
    s = xy_from_polygon(p)
    F = map_F(p)
    pv, qv = [None] * n, [None] * n
    for i in range(1, n + 1):
        e1, e2 = p.vertex(i + 1), p.vertex(i + k)
        pv[i - 1] = cross_ratio(_on_line(e1, e1, e2), _on_line(F.vertex(i), e1, e2),
                                _on_line(e2, e1, e2), _on_line(F.vertex(i + 1), e1, e2))
        vi, vn = p.vertex(i), p.vertex(i + 1)
        P = tuple(b - a for a, b in zip(vi, vn))
        Q = tuple(s.xi(i) * b + s.yi(i - 1) * a for a, b in zip(vi, vn))
        qv[(i - r - 2) % n] = cross_ratio(_on_line(P, vi, vn), _on_line(vn, vi, vn),
                                          _on_line(Q, vi, vn), _on_line(vi, vi, vn))
    return PQState(shape, tuple(pv), tuple(qv))


# ---------------------------------------------------------------------------
# polygon JSON


def polygon_to_dict(p: LiftedPolygon) -> dict:
    return {
        "k": p.k,
        "n": p.n,
        "vertices": [[format_rational(a) for a in v] for v in p.vertices],
        "monodromy": [[format_rational(a) for a in r] for r in p.monodromy],
    }


def polygon_from_dict(data: dict) -> LiftedPolygon:
    expected = {"k", "n", "vertices", "monodromy"}
    if not isinstance(data, dict):
        raise StateFormatError("polygon must be a JSON object")
    extra = set(data) - expected
    if extra:
        raise StateFormatError(f"unknown polygon fields: {sorted(extra)}")
    missing = expected - set(data)
    if missing:
        raise StateFormatError(f"missing polygon fields: {sorted(missing)}")
    try:
        verts = [[as_rational(a) for a in v] for v in data["vertices"]]
        mono = [[as_rational(a) for a in r] for r in data["monodromy"]]
        return LiftedPolygon(MapShape(int(data["k"]), int(data["n"])), tuple(verts), tuple(mono))
    except (TypeError, ValueError) as exc:
        raise StateFormatError(str(exc)) from exc


# ---------------------------------------------------------------------------
# plane polygons (floating point)
#
# The plane side is only defined up to irrational invariant subspaces, and
# both the reconstruction and the skip-diagonal map can amplify rounding by
# many orders of magnitude near degenerate polygons.  Everything therefore
# runs in mpmath at WORKING_DPS digits; numpy arrays (complex128) appear only
# at the output boundary.


def _precise(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with mpmath.workdps(WORKING_DPS):
            return fn(*args, **kwargs)
    return wrapper


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(complex(x) if isinstance(x, np.generic) else x)


def _mp_matrix(a) -> mpmath.matrix:
    return mpmath.matrix([[_mp(v) for v in row] for row in a])


def _cross(a, b) -> list:
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _det3(a, b, c):
    x = _cross(b, c)
    return a[0] * x[0] + a[1] * x[1] + a[2] * x[2]


def _norm(v):
    return mpmath.sqrt(sum(abs(c) ** 2 for c in v))


def _apply(m: mpmath.matrix, v) -> list:
    return [sum(m[i, j] * v[j] for j in range(3)) for i in range(3)]


@dataclass
class PlanePolygon:
    """n vertices in C^3 (mpmath complex) and a 3x3 monodromy with V_{j+n} = M V_j."""

    vertices: list
    monodromy: mpmath.matrix

    @property
    def n(self) -> int:
        return len(self.vertices)

    @_precise
    def vertex(self, j: int) -> list:
        m, rem = divmod(j - 1, self.n)
        v = list(self.vertices[rem])
        if m:
            step = self.monodromy if m > 0 else mpmath.inverse(self.monodromy)
            for _ in range(abs(m)):
                v = _apply(step, v)
        return v

    def array(self) -> np.ndarray:
        """Vertices rounded to complex128, shape (n, 3)."""
        return np.array([[complex(c) for c in v] for v in self.vertices], dtype=complex)

    @_precise
    def transformed(self, g) -> "PlanePolygon":
        g = _mp_matrix(g)
        verts = [_apply(g, v) for v in self.vertices]
        return PlanePolygon(verts, g * self.monodromy * mpmath.inverse(g))


def _coefficient_table(s: XYState) -> list[Vector]:
    """Rows F_q (q = 1..n+k): exact coefficients of V_q in the frame V_1..V_k."""
    p = polygon_from_xy(s)
    k, n = s.shape.k, s.shape.n
    return [p.vertex(q) for q in range(1, n + k + 1)]


def _B_exact(s: XYState) -> list[list[Fraction]]:
    k, n = s.shape.k, s.shape.n
    F = _coefficient_table(s)

    def Fq(q, i):  # F_q^i, both 1-based
        return F[q - 1][i - 1]

    B = [[Fraction(0)] * k for _ in range(k)]
    for beta in range(1, 4):
        for alpha in range(1, 4):
            B[beta - 1][alpha - 1] = Fq(n + alpha, beta)
    for j in range(4, k + 1):
        for beta in range(1, 4):
            B[beta - 1][j - 1] = -Fq(n + j, beta)
    for i in range(4, k + 1):
        for alpha in range(1, 4):
            B[i - 1][alpha - 1] = -Fq(n + alpha, i)
        for j in range(4, k + 1):
            B[i - 1][j - 1] = Fq(n + j, i)
    return B


def branch_count(k: int) -> int:
    return comb(k, 3)


def _is_generic(vs: Sequence, rtol: float) -> bool:
    for a, b, c in combinations(vs, 3):
        if abs(_det3(a, b, c)) <= rtol * _norm(a) * _norm(b) * _norm(c):
            return False
    return True


@_precise
def reconstruct_plane_polygon(s: XYState, branch: int, rtol: float = DEFAULT_RTOL) -> PlanePolygon:
    """Twisted n-gon in CP^2 whose (x, y) coordinates are ``s``; ``branch`` picks one of C(k, 3)."""
    k, n = s.shape.k, s.shape.n
    if k < 3:
        raise BranchUnavailable("plane reconstruction needs k >= 3")
    if not 0 <= branch < branch_count(k):
        raise BranchUnavailable(f"branch {branch} out of range 0..{branch_count(k) - 1}")
    F = _mp_matrix(_coefficient_table(s))
    frame = mpmath.matrix(k, 3)  # V_1..V_k in C^3
    for i in range(3):
        frame[i, i] = 1
    if k > 3:
        vals, vecs = mpmath.eig(_mp_matrix(_B_exact(s)))
        gaps = [abs(a - b) for a, b in combinations(vals, 2)]
        if min(gaps) <= rtol * max(1, max(abs(v) for v in vals)):
            raise BranchUnavailable("B has a repeated eigenvalue")
        # order eigenpairs canonically so branch numbers do not depend on the solver
        order = sorted(range(k), key=lambda j: (float(mpmath.re(vals[j])), float(mpmath.im(vals[j]))))
        pick = [order[j] for j in list(combinations(range(k), k - 3))[branch]]
        E = mpmath.matrix(k, k - 3)
        for c, col in enumerate(pick):
            for row in range(k):
                E[row, c] = vecs[row, col]
        bottom = E[3:, :]
        if abs(mpmath.det(bottom)) <= rtol * max(1, mpmath.mnorm(bottom, "F") ** (k - 3)):
            raise BranchUnavailable(f"branch {branch} is not a graph over the last k-3 coordinates")
        xi = E * mpmath.inverse(bottom)
        for i in range(3, k):
            for c in range(3):
                frame[i, c] = xi[c, i - 3]
    allv = F * frame  # V_q = sum_i F_q^i V_i
    rows = [[allv[q, c] for c in range(3)] for q in range(n + k)]
    mono = mpmath.matrix([[rows[n + c][r] for c in range(3)] for r in range(3)])
    residual = 0
    for j in range(4, k + 1):
        diff = [a - b for a, b in zip(_apply(mono, rows[j - 1]), rows[n + j - 1])]
        residual = max(residual, _norm(diff) / max(1, _norm(rows[n + j - 1])))
    if residual > rtol:
        raise ToleranceExceeded(f"twist residual {float(residual):.3e} exceeds {rtol:.1e}")
    return PlanePolygon(rows[:n], mono)


def _window(p: PlanePolygon, i: int, k: int, rtol: float) -> list:
    vs = [p.vertex(i), p.vertex(i + 1), p.vertex(i + k - 1), p.vertex(i + k)]
    if not _is_generic(vs, rtol):
        raise ToleranceExceeded(f"three of V_{i}, V_{i + 1}, V_{i + k - 1}, V_{i + k} are collinear")
    return vs


@_precise
def plane_coords(p: PlanePolygon, k: int, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """psi: the (x, y) coordinates of a plane polygon as a complex vector (x..., y...)."""
    n = p.n
    a, b, c = {}, {}, {}
    for i in range(1, n + 1):
        vs = _window(p, i, k, rtol)
        # V_{i+k} = a V_{i+k-1} + b V_{i+1} + c V_i, by Cramer's rule
        d = _det3(vs[2], vs[1], vs[0])
        a[(i + k - 2) % n + 1] = _det3(vs[3], vs[1], vs[0]) / d
        b[i % n + 1] = _det3(vs[2], vs[3], vs[0]) / d
        c[(i - 1) % n + 1] = _det3(vs[2], vs[1], vs[3]) / d

    def get(seq, j):
        return seq[(j - 1) % n + 1]

    x, y = [], []
    for i in range(1, n + 1):
        prod = mpmath.fprod(get(a, j) for j in range(i + 1, i + k))
        x.append(get(b, i + 1) / prod)
        y.append(get(c, i + 1) / (prod * get(a, i + k)))
    return np.array([complex(v) for v in x + y], dtype=complex)


@_precise
def skip_diagonal_map(p: PlanePolygon, k: int, rtol: float = DEFAULT_RTOL) -> PlanePolygon:
    """Vertices (V_i, V_{i+k-1}) ∩ (V_{i+1}, V_{i+k}) via homogeneous cross products."""
    out = []
    for i in range(1, p.n + 1):
        vs = _window(p, i, k, rtol)
        out.append(_cross(_cross(vs[0], vs[2]), _cross(vs[1], vs[3])))
    return PlanePolygon(out, p.monodromy.copy())


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


def xy_vector(s: XYState) -> np.ndarray:
    return np.array([complex(float(v)) for v in s.coords()], dtype=complex)


@_precise
def plane_invariants(p: PlanePolygon) -> np.ndarray:
    """Projective invariants [i,i+1,i+2][i,i+3,i+4] / ([i,i+1,i+3][i,i+2,i+4]) for i = 1..n."""
    out = []
    for i in range(1, p.n + 1):
        v = [p.vertex(i + t) for t in range(5)]

        def br(a, b, c):
            return _det3(v[a], v[b], v[c])

        out.append(complex(br(0, 1, 2) * br(0, 3, 4) / (br(0, 1, 3) * br(0, 2, 4))))
    return np.array(out, dtype=complex)


def distinct_branches(polygons: Sequence[PlanePolygon], rtol: float = DEFAULT_RTOL) -> bool:
    inv = [plane_invariants(p) for p in polygons]
    return all(relative_error(a, b) > rtol for a, b in combinations(inv, 2))
