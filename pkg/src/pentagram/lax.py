"""Transfer matrices, the spectral polynomial and its coefficients.

Matrices live in the ring Q[lambda, z] (see :class:`BiPoly`).  Whenever an
identity involves ``1/(1+z)``, ``1/z`` or ``1/lambda`` it is multiplied
through by that factor so that every comparison is an exact polynomial one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from pentagram.dynamics import MapShape, XYState, map_T
from pentagram.errors import SingularState
from pentagram.exact.bipoly import BiPoly
from pentagram.exact.jet import grad_of, seed, value_of
from pentagram.exact.linalg import rational_rank
from pentagram.exact.polymatrix import PolyMatrix, matrix_product, poly_det

LAM = BiPoly.lam()
ZV = BiPoly.z()


def _scalar_poly(c) -> BiPoly:
    return BiPoly.const(c)


def _inv(v, what: str, index: int):
    if not v:
        raise SingularState(f"{what} vanishes", index=index)
    return 1 / v


# ---------------------------------------------------------------------------
# k x k transfer matrices


def lax_L(s: XYState, i: int) -> PolyMatrix:
    k = s.shape.k
    x, y = s.xi(i), s.yi(i)
    if k == 2:
        return PolyMatrix([[LAM * (-x), x + y], [-LAM, 1]])
    m: list[list] = [[0] * k for _ in range(k)]
    m[0][k - 2] = x
    m[0][k - 1] = x + y
    m[1][0] = -LAM
    for row in range(2, k):
        m[row][row - 1] = 1
    m[k - 1][k - 1] = 1
    return PolyMatrix(m)


def monodromy_M(s: XYState) -> PolyMatrix:
    return matrix_product([lax_L(s, i) for i in range(1, s.shape.n + 1)])


# ---------------------------------------------------------------------------
# n x n boundary measurement matrix


def z_matrix(n: int) -> PolyMatrix:
    m: list[list] = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = 1
    m[n - 1][0] = m[n - 1][0] - ZV if n > 1 else -ZV
    return PolyMatrix(m)


def geometric_sum(Z: PolyMatrix) -> PolyMatrix:
    """1 + Z + ... + Z^{n-1}, which equals (1+z)(1-Z)^{-1}."""
    acc = PolyMatrix.identity(Z.rows)
    term = PolyMatrix.identity(Z.rows)
    for _ in range(Z.rows - 1):
        term = term @ Z
        acc = acc + term
    return acc


def boundary_A(s: XYState) -> PolyMatrix:
    """(1+z) A_{k,n}(z) = Z (D_x + D_y Z) Z^{k-2} (1 + Z + ... + Z^{n-1})."""
    n, k = s.shape.n, s.shape.k
    Z = z_matrix(n)
    inner = PolyMatrix.diag(list(s.x)) + PolyMatrix.diag(list(s.y)) @ Z
    return Z @ inner @ (Z ** (k - 2)) @ geometric_sum(Z)


def boundary_A_oracle(s: XYState) -> PolyMatrix:
    """Entrywise path-count formula for (1+z) a_ij, by cases on j - i."""
    n, k = s.shape.n, s.shape.k
    rows = []
    for i in range(1, n + 1):
        x, y = s.xi(i + 1), s.yi(i + 1)
        row = []
        for j in range(1, n + 1):
            d = j - i
            if d > k - 1:
                e = _scalar_poly(x + y)
            elif d == k - 1:
                e = x - ZV * y
            elif d > k - n - 1:
                e = ZV * (-(x + y))
            elif d == k - n - 1:
                e = -ZV * (x - ZV * y)
            else:
                e = (ZV * ZV) * (x + y)
            row.append(e)
        rows.append(row)
    return PolyMatrix(rows)


# ---------------------------------------------------------------------------
# spectral polynomial


@dataclass(frozen=True)
class IntegralTable:
    shape: MapShape
    P: BiPoly

    def I(self, i: int, j: int):
        return self.P.coeff(i, j)

    @property
    def support(self) -> set[tuple[int, int]]:
        return self.P.support()

    def items(self):
        return sorted(self.P.terms.items())


def spectral_polynomial(s: XYState) -> BiPoly:
    k = s.shape.k
    M = monodromy_M(s)
    return poly_det(PolyMatrix.identity(k) + M * ZV)


def spectral(s: XYState) -> IntegralTable:
    return IntegralTable(s.shape, spectral_polynomial(s))


def tcp_right_side(s: XYState) -> BiPoly:
    """(1+z) det(I_n + lambda A) obtained from the polynomial boundary matrix."""
    n = s.shape.n
    one_plus_z = BiPoly.one() + ZV
    m = PolyMatrix.identity(n, one_plus_z) + boundary_A(s) * LAM
    d = poly_det(m)
    return d.exact_div(one_plus_z ** (n - 1))


def verify_tcp(s: XYState) -> bool:
    return spectral_polynomial(s) == tcp_right_side(s)


def det_A_expected(s: XYState) -> BiPoly:
    """det((1+z)A) = (1+z)^{n-1} (-1)^{n(k-1)} z^{k-1} (prod x + (-1)^n z prod y).

    Factor by factor: det Z = (-1)^n z, det(1 - Z) = 1 + z and
    det(D_x + D_y Z) = prod x + (-1)^n z prod y.
    """
    n, k = s.shape.n, s.shape.k
    px = Fraction(1)
    py = Fraction(1)
    for a, b in zip(s.x, s.y):
        px *= a
        py *= b
    tail = BiPoly.const(px) + ZV * ((-1) ** n * py)
    return ((BiPoly.one() + ZV) ** (n - 1)) * (ZV ** (k - 1)) * tail * (-1) ** (n * (k - 1))


# ---------------------------------------------------------------------------
# Newton polygon


@dataclass
class NewtonReport:
    shape: MapShape
    support: set
    outside: list
    vertices_present: bool
    casimir_positions: list

    @property
    def ok(self) -> bool:
        return not self.outside and self.vertices_present


def in_strip(shape: MapShape, i: int, j: int) -> bool:
    n, k = shape.n, shape.k
    return 0 <= i <= n and (k - 1) * i <= n * j <= (k - 1) * i + n


def newton_polygon(t: IntegralTable) -> NewtonReport:
    shape = t.shape
    n, k = shape.n, shape.k
    d = gcd(k - 1, n)
    support = t.support
    outside = sorted(e for e in support if not in_strip(shape, *e))
    vertices = [(0, 0), (0, 1), (n, k), (n, k - 1)]
    casimir = []
    for l in range(d + 1):
        casimir.append((l * n // d, l * (k - 1) // d))
        casimir.append((l * n // d, l * (k - 1) // d + 1))
    return NewtonReport(shape, support, outside, all(v in support for v in vertices), casimir)


# ---------------------------------------------------------------------------
# zero curvature representation


def aux_P_scaled(s: XYState, i: int) -> PolyMatrix:
    """lambda * P_i(lambda), the auxiliary gauge matrix with its 1/lambda cleared.

    For k >= 3 the displayed layout is evaluated at ``i - r' - 1`` so that the
    relation reads L*_i P_{i+1} = P_i L_{i+r-1} in our indexing.  For k = 3
    the row (-1/sigma, x/sigma, 1) carries an extra factor -1/lambda.
    """
    shape = s.shape
    k = shape.k
    X, Y = s.xi, s.yi

    def isig(j):
        return _inv(s.sigma(j), "sigma", j)

    if k == 2:
        return PolyMatrix([
            [LAM * (-X(i - 1) * isig(i - 1)) - isig(i), 1],
            [LAM * (-isig(i)), 0],
        ])
    i = i - shape.rprime - 1
    m: list[list] = [[BiPoly.zero()] * k for _ in range(k)]
    for t in range(k - 3):
        if t == 0:
            m[0][1] = _scalar_poly(-X(i) * isig(i))
            m[0][2] = _scalar_poly(-Y(i + 1) * isig(i + 1))
        else:
            m[t][t + 1] = LAM * (X(i + t) * isig(i + t))
            m[t][t + 2] = LAM * (Y(i + t + 1) * isig(i + t + 1))
    row = k - 3
    if k == 3:
        m[row][0] = _scalar_poly(isig(i + 1))
        m[row][1] = _scalar_poly(-X(i) * isig(i))
        m[row][2] = _scalar_poly(-1)
    else:
        m[row][0] = LAM * (-isig(i + k - 2))
        m[row][k - 2] = LAM * (X(i + k - 3) * isig(i + k - 3))
        m[row][k - 1] = LAM
    m[k - 2][0] = LAM * isig(i + k - 2)
    m[k - 2][1] = _scalar_poly(isig(i + k - 1))
    m[k - 1][1] = _scalar_poly(-isig(i + k - 1))
    return PolyMatrix(m)


def _zc_L_offset(shape: MapShape) -> int:
    return 0 if shape.k == 2 else shape.r - 1


def zero_curvature_check(s: XYState) -> bool:
    """L*_i (lambda P_{i+1}) = (lambda P_i) L_{i+r-1} for every i (k = 2 uses L_i)."""
    t = map_T(s)
    off = _zc_L_offset(s.shape)
    n = s.shape.n
    P = [aux_P_scaled(s, i) for i in range(1, n + 2)]
    for i in range(1, n + 1):
        if lax_L(t, i) @ P[i] != P[i - 1] @ lax_L(s, i + off):
            return False
    return True


def monodromy_conjugation_check(s: XYState) -> bool:
    """M* P_1 = P_1 (L_{1+off} ... L_{n+off}), the telescoped zero-curvature relation."""
    t = map_T(s)
    off = _zc_L_offset(s.shape)
    n = s.shape.n
    P1 = aux_P_scaled(s, 1)
    rotated = matrix_product([lax_L(s, i + off) for i in range(1, n + 1)])
    return monodromy_M(t) @ P1 == P1 @ rotated


# ---------------------------------------------------------------------------
# n x n refactorization


@dataclass
class Refactorization:
    """A_1 = A1_poly / (1+z) and A_2 = A2_poly / (-z)^minus_z_exp."""

    A1_poly: PolyMatrix
    A2_poly: PolyMatrix
    minus_z_exp: int
    product_ok: bool = field(default=False)
    swapped_ok: bool = field(default=False)


def refactorization(s: XYState) -> Refactorization:
    """A = A_1 A_2 and A(T s) = A_2 A_1 with

    A_1 = Z D_sigma (1 - Z)^{-1} Z^{r'},  A_2 = Z^{-r'} (D_x + Z D_y) D_sigma^{-1} Z^{k-2}.
    """
    shape = s.shape
    n, k, rp = shape.n, shape.k, shape.rprime
    Z = z_matrix(n)
    sig_inv = [_inv(v, "sigma", i + 1) for i, v in enumerate(s.sigmas)]
    A1 = Z @ PolyMatrix.diag(list(s.sigmas)) @ geometric_sum(Z) @ (Z ** rp)
    # Z^{-r'} = Z^{n-r'} / (-z) for 0 < r' < n
    z_neg, e = (PolyMatrix.identity(n), 0) if rp == 0 else (Z ** (n - rp), 1)
    inner = PolyMatrix.diag(list(s.x)) + Z @ PolyMatrix.diag(list(s.y))
    A2 = z_neg @ inner @ PolyMatrix.diag(sig_inv) @ (Z ** (k - 2))
    scale = (-ZV) ** e
    ok1 = A1 @ A2 == boundary_A(s) * scale
    ok2 = A2 @ A1 == boundary_A(map_T(s)) * scale
    return Refactorization(A1, A2, e, ok1, ok2)


# ---------------------------------------------------------------------------
# monodromy of the twisted polygon


def companion_Q(s: XYState, i: int) -> PolyMatrix:
    k = s.shape.k
    m: list[list] = [[BiPoly.zero()] * k for _ in range(k)]
    for row in range(k - 1):
        m[row][row + 1] = BiPoly.one()
    last = m[k - 1]
    last[0] = last[0] + LAM * s.yi(i - 1)
    last[1] = last[1] + LAM * s.xi(i)
    last[k - 1] = last[k - 1] + 1
    return PolyMatrix(m)


def monodromy_Q(s: XYState) -> PolyMatrix:
    n = s.shape.n
    return matrix_product([companion_Q(s, i) for i in range(n, 0, -1)])


def charpoly(m: PolyMatrix) -> BiPoly:
    """det(t I - m) for a matrix in lambda only; t is carried by the z slot."""
    if any(j for row in m.entries for e in row for (_, j) in e.terms):
        raise ValueError("charpoly expects a matrix free of z")
    return poly_det(PolyMatrix.identity(m.rows, ZV) - m)


def monodromy_charpoly_check(s: XYState) -> bool:
    return charpoly(monodromy_Q(s)) == charpoly(monodromy_M(s).map(lambda e: e.scale_lambda(-1)))


# ---------------------------------------------------------------------------
# integrals as functions: conservation, involution, independence


def integral_exponents(t: IntegralTable) -> list[tuple[int, int]]:
    return sorted(e for e in t.support if e != (0, 0))


def integral_jets(s: XYState) -> dict[tuple[int, int], object]:
    """Every coefficient I_ij as a Jet over the 2n coordinates (x..., y...)."""
    n = s.shape.n
    point = list(s.coords())
    u = seed(point)
    js = XYState(s.shape, tuple(u[:n]), tuple(u[n:]))
    P = spectral_polynomial(js)
    return dict(P.terms)


def integrals_conserved(s: XYState, steps: int) -> bool:
    ref = spectral_polynomial(s)
    cur = s
    for _ in range(steps):
        cur = map_T(cur)
        if spectral_polynomial(cur) != ref:
            return False
    return True


def involution_violations(s: XYState) -> list[tuple]:
    from pentagram.poisson import bracket_matrix, build_bracket_xy

    W = build_bracket_xy(s.shape).Omega
    point = list(s.coords())
    dim = len(point)
    jets = integral_jets(s)
    keys = sorted(e for e in jets if e != (0, 0))
    grads = [grad_of(jets[e], dim) for e in keys]
    B = bracket_matrix(W, point, grads)
    return [(keys[a], keys[b]) for a in range(len(keys)) for b in range(a + 1, len(keys)) if B[a][b]]


def casimir_coefficients_ok(s: XYState) -> bool:
    """Coefficients at the Casimir lattice points Poisson-commute with every coordinate."""
    from pentagram.poisson import bracket_matrix, build_bracket_xy

    W = build_bracket_xy(s.shape).Omega
    point = list(s.coords())
    dim = len(point)
    jets = integral_jets(s)
    report = newton_polygon(IntegralTable(s.shape, BiPoly({e: value_of(c) for e, c in jets.items()})))
    unit = [[Fraction(int(a == b)) for b in range(dim)] for a in range(dim)]
    for e in report.casimir_positions:
        if e == (0, 0) or e not in jets:
            continue
        grads = [grad_of(jets[e], dim)] + unit
        B = bracket_matrix(W, point, grads)
        if any(B[0][1:]):
            return False
    return True


def integral_jacobian_rank(s: XYState) -> int:
    jets = integral_jets(s)
    dim = 2 * s.shape.n
    rows = [grad_of(jets[e], dim) for e in sorted(jets) if e != (0, 0)]
    return rational_rank(rows)


def expected_independent_count(shape: MapShape) -> int:
    return shape.n + gcd(shape.k - 1, shape.n)
