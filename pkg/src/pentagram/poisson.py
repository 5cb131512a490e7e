"""Quiver Q_{k,n}, log-canonical brackets on (p, q) and (x, y), Casimirs and
exact invariance checks.

A log-canonical bracket is stored as an integer matrix ``W`` with
``{u_a, u_b} = W[a][b] * u_a * u_b``.  Coordinates are ordered
``(p_1..p_n, q_1..q_n)`` or ``(x_1..x_n, y_1..y_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from pentagram.dynamics import MapShape, PQState, XYState, map_T, map_Tbar, project_pq
from pentagram.errors import PentagramError, UnstableRange
from pentagram.exact.jet import Jet, grad_of, seed, value_of
from pentagram.exact.linalg import int_matrix_rank
from pentagram.sampling import random_pq, random_xy, rng_for

IntMatrix = list[list[int]]


def cyclic_power(n: int, m: int) -> IntMatrix:
    """C^m for the cyclic shift C = e_12 + ... + e_{n-1,n} + e_{n1}."""
    return [[1 if (j - i - m) % n == 0 else 0 for j in range(n)] for i in range(n)]


def _lincomb(n: int, terms: Sequence[tuple[int, int]]) -> IntMatrix:
    out = [[0] * n for _ in range(n)]
    for coef, power in terms:
        cp = cyclic_power(n, power)
        for i in range(n):
            for j in range(n):
                out[i][j] += coef * cp[i][j]
    return out


def _transpose(m: IntMatrix) -> IntMatrix:
    return [list(r) for r in zip(*m)]


def _block(a, b, c, d) -> IntMatrix:
    return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]


def _require_stable(shape: MapShape):
    if not shape.stable:
        raise UnstableRange(f"(k, n) = ({shape.k}, {shape.n}) is outside n >= 2k - 1")


# ---------------------------------------------------------------------------
# quiver and the (p, q) bracket


@dataclass(frozen=True)
class Quiver:
    shape: MapShape
    A: tuple = field(repr=False)

    @property
    def size(self) -> int:
        return 2 * self.shape.n

    def edges_out(self, v: int) -> int:
        return sum(a for a in self.A[v] if a > 0)

    def edges_in(self, v: int) -> int:
        return -sum(a for a in self.A[v] if a < 0)

    def neighbors_of_p(self, i: int) -> dict[str, int]:
        """Octagonal faces around the quadrilateral p_i (1-based labels)."""
        n, r, rp = self.shape.n, self.shape.r, self.shape.rprime

        def lab(j):
            return (j - 1) % n + 1

        return {"left": lab(i - r - 1), "above": lab(i + rp), "right": lab(i + rp + 1), "below": lab(i - r)}


def build_quiver(shape: MapShape) -> Quiver:
    """Skew-adjacency of Q_{k,n}: p_i -> q_{i-r-1}, q_{i+r'+1}; q_{i-r}, q_{i+r'} -> p_i."""
    n, r, rp = shape.n, shape.r, shape.rprime
    pq = _lincomb(n, [(1, -r - 1), (1, rp + 1), (-1, -r), (-1, rp)])
    zero = [[0] * n for _ in range(n)]
    qp = [[-v for v in row] for row in _transpose(pq)]
    A = _block(zero, pq, qp, zero)
    quiver = Quiver(shape, tuple(tuple(row) for row in A))
    for i in range(1, n + 1):
        nb = quiver.neighbors_of_p(i)
        row = A[i - 1]
        expected = [0] * n
        expected[nb["left"] - 1] += 1
        expected[nb["right"] - 1] += 1
        expected[nb["above"] - 1] -= 1
        expected[nb["below"] - 1] -= 1
        assert row[n:] == expected, "quiver disagrees with the dual-network face picture"
    return quiver


def _label_index(label, n: int) -> int:
    if isinstance(label, int):
        return label
    kind, i = label
    base = {"p": 0, "x": 0, "q": n, "y": n}[kind]
    return base + (i - 1) % n


def bracket_pq(s: PQState, a, b) -> Fraction:
    """{v_a, v_b}_k = a_ab v_a v_b; labels are ('p', i), ('q', i) or 0-based ints."""
    A = build_quiver(s.shape).A
    n = s.shape.n
    ia, ib = _label_index(a, n), _label_index(b, n)
    v = s.coords()
    return A[ia][ib] * v[ia] * v[ib]


# ---------------------------------------------------------------------------
# the (x, y) bracket


@dataclass(frozen=True)
class BracketSpec:
    shape: MapShape
    Omega: tuple = field(repr=False)

    def omega_blocks(self):
        n = self.shape.n
        W = self.Omega
        return (
            [list(r[:n]) for r in W[:n]],
            [list(r[n:]) for r in W[:n]],
            [list(r[:n]) for r in W[n:]],
            [list(r[n:]) for r in W[n:]],
        )


def build_bracket_xy(shape: MapShape) -> BracketSpec:
    _require_stable(shape)
    n, k = shape.n, shape.k
    om_x = _lincomb(n, [(c, p) for i in range(1, k - 1) for c, p in ((1, -i), (-1, i))])
    om_y = _lincomb(n, [(c, p) for i in range(1, k) for c, p in ((1, -i), (-1, i))])
    om_yx = _lincomb(n, [(c, p) for i in range(1, k) for c, p in ((1, 1 - i), (-1, i))])
    upper_right = [[-v for v in row] for row in _transpose(om_yx)]
    W = _block(om_x, upper_right, om_yx, om_y)
    return BracketSpec(shape, tuple(tuple(r) for r in W))


def listed_brackets(shape: MapShape) -> dict[tuple[int, int], int]:
    """Nonzero log-coefficients read directly off the itemized bracket list.

    Keys are 0-based coordinate indices in (x, y) order.
    """
    n, k = shape.n, shape.k
    out: dict[tuple[int, int], int] = {}

    def put(a, b, c):
        out[(a, b)] = out.get((a, b), 0) + c
        out[(b, a)] = out.get((b, a), 0) - c

    for i in range(n):
        for l in range(1, k - 1):
            put(i, (i + l) % n, -1)
        for l in range(1, k):
            put(n + i, n + (i + l) % n, -1)
        for l in range(1, k):
            put(n + i, (i + l) % n, -1)
        for l in range(0, k - 1):
            put(n + i, (i - l) % n, 1)
    return {key: v for key, v in out.items() if v}


def poisson_rank(shape: MapShape) -> int:
    W = build_bracket_xy(shape).Omega
    rank = int_matrix_rank(W)
    expected = 2 * (shape.n - gcd(shape.k - 1, shape.n))
    if rank != expected:
        raise AssertionError(f"rank {rank} != 2(n - d) = {expected}")
    return rank


def casimirs(shape: MapShape) -> list[tuple[int, ...]]:
    """Exponent vectors (over x_1..x_n, y_1..y_n) of the 2d Casimir monomials."""
    _require_stable(shape)
    n, k = shape.n, shape.k
    d = gcd(k - 1, n)
    W = build_bracket_xy(shape).Omega
    out = []
    for half in (0, 1):
        for s in range(1, d + 1):
            vec = [0] * (2 * n)
            for i in range(n // d):
                vec[half * n + (s - 1 + i * (k - 1)) % n] += 1
            for col in range(2 * n):
                if sum(vec[a] * W[a][col] for a in range(2 * n)) != 0:
                    raise AssertionError("Casimir vector not in the kernel")
            out.append(tuple(vec))
    return out


def monomial(exponents: Sequence[int]) -> Callable:
    def f(u):
        out = 1
        for e, v in zip(exponents, u):
            if e:
                out = out * v**e
        return out

    return f


# ---------------------------------------------------------------------------
# evaluation of brackets on functions


def log_canonical_bracket(W, point: Sequence, grad_f: Sequence, grad_g: Sequence) -> Fraction:
    """sum_ab W_ab u_a u_b df/du_a dg/du_b."""
    m = len(point)
    total = Fraction(0)
    for a in range(m):
        fa = grad_f[a]
        if not fa:
            continue
        ua = point[a] * fa
        row = W[a]
        for b in range(m):
            w = row[b]
            if w and grad_g[b]:
                total += w * ua * point[b] * grad_g[b]
    return total


def bracket_matrix(W, point: Sequence, grads: Sequence[Sequence]) -> list[list[Fraction]]:
    """All pairwise brackets of functions given by their gradient rows."""
    m = len(point)
    weighted = [[W[a][b] * point[a] * point[b] if W[a][b] else 0 for b in range(m)] for a in range(m)]
    inner = [[sum((weighted[a][b] * g[b] for b in range(m) if weighted[a][b] and g[b]), Fraction(0))
              for a in range(m)] for g in grads]
    return [[sum((gf[a] * row[a] for a in range(m) if gf[a] and row[a]), Fraction(0)) for row in inner]
            for gf in grads]


def bracket_fn(f: Callable, g: Callable, s: XYState) -> Fraction:
    """{f, g} under the (x, y) bracket; f and g take the coordinate list (x..., y...)."""
    W = build_bracket_xy(s.shape).Omega
    point = list(s.coords())
    dim = len(point)
    jf = f(seed(point))
    jg = g(seed(point))
    return log_canonical_bracket(W, point, grad_of(jf, dim), grad_of(jg, dim))


def _xy_from_coords(shape: MapShape, u: Sequence) -> XYState:
    n = shape.n
    return XYState(shape, tuple(u[:n]), tuple(u[n:]))


def _pq_from_coords(shape: MapShape, u: Sequence) -> PQState:
    n = shape.n
    return PQState(shape, tuple(u[:n]), tuple(u[n:]))


def pushforward_violations(W_src, W_dst, point: Sequence, f: Callable) -> list[tuple[int, int]]:
    """Pairs (a, b) where {f_a, f_b}_src != W_dst[a][b] f_a f_b at ``point``."""
    dim = len(point)
    outs = f(seed(point))
    vals = [value_of(o) for o in outs]
    grads = [grad_of(o, dim) for o in outs]
    B = bracket_matrix(W_src, point, grads)
    bad = []
    for a in range(len(outs)):
        for b in range(len(outs)):
            if B[a][b] != W_dst[a][b] * vals[a] * vals[b]:
                bad.append((a, b))
    return bad


@dataclass
class InvarianceReport:
    shape: MapShape
    trials: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_T_invariance(shape: MapShape, trials: int, seed_value: int = 0) -> InvarianceReport:
    """Exact check that T_k is a Poisson map for the (x, y) bracket."""
    W = build_bracket_xy(shape).Omega
    report = InvarianceReport(shape, trials)
    for t in range(trials):
        s = random_xy(shape, rng_for(seed_value, "T-invariance", shape.k, shape.n, t))
        bad = pushforward_violations(W, W, list(s.coords()),
                                     lambda u: map_T(_xy_from_coords(shape, u)).coords())
        report.violations.extend((t, a, b) for a, b in bad)
    return report


def check_Tbar_invariance(shape: MapShape, trials: int, level=None, seed_value: int = 0) -> InvarianceReport:
    """Exact check that the quiver bracket is preserved by Tbar_k."""
    A = build_quiver(shape).A
    report = InvarianceReport(shape, trials)
    for t in range(trials):
        s = random_pq(shape, rng_for(seed_value, "Tbar-invariance", shape.k, shape.n, t), level=level)
        bad = pushforward_violations(A, A, list(s.coords()),
                                     lambda u: map_Tbar(_pq_from_coords(shape, u)).coords())
        report.violations.extend((t, a, b) for a, b in bad)
    return report


def check_projection_pushforward(shape: MapShape, trials: int, seed_value: int = 0) -> InvarianceReport:
    """The (x, y) bracket pushed through pi_k equals the quiver bracket."""
    W = build_bracket_xy(shape).Omega
    A = build_quiver(shape).A
    report = InvarianceReport(shape, trials)
    for t in range(trials):
        s = random_xy(shape, rng_for(seed_value, "projection", shape.k, shape.n, t))
        bad = pushforward_violations(W, A, list(s.coords()),
                                     lambda u: project_pq(_xy_from_coords(shape, u)).coords())
        report.violations.extend((t, a, b) for a, b in bad)
    return report
