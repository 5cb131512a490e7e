import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from pentagram.dynamics import MapShape, XYState, map_D, map_T, map_T_inv, project_pq, scale, shift
from pentagram.errors import BranchUnavailable, DegeneratePolygon, DegenerateQuadruple, ToleranceExceeded
from pentagram.geometry import (
    LiftedPolygon,
    PlanePolygon,
    RP1Point,
    branch_count,
    corrugation_residual,
    cross_ratio,
    cross_ratio_coords,
    distinct_branches,
    dualize,
    map_F,
    map_F_oracle,
    map_G,
    plane_coords,
    polygon_from_xy,
    projectively_equal,
    reconstruct_plane_polygon,
    relative_error,
    same_polygon,
    skip_diagonal_map,
    xy_from_polygon,
    xy_vector,
)
from pentagram.sampling import random_xy, rng_for

F = Fraction
CELLS = [(3, 5), (3, 8), (4, 9), (5, 11)]


def _polygon_state(k, n, t=0, tag="geo"):
    def ok(s):
        map_T_inv(s)
        p = polygon_from_xy(s)
        map_F(p)
        map_G(p)
        dualize(p)
        return map_T(s).is_regular()

    return random_xy(MapShape(k, n), rng_for(5, tag, k, n, t), ok)


def test_polygon_from_xy_unit_state():
    p = polygon_from_xy(XYState.of(3, [1] * 5, [1] * 5))
    assert p.vertex(4) == (1, 1, 1)
    assert p.vertices[:3] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_polygon_needs_k_at_least_3():
    with pytest.raises(DegeneratePolygon):
        polygon_from_xy(XYState.of(2, [1, 2, 3], [1, 1, 1]))


@pytest.mark.parametrize("k,n", CELLS)
def test_roundtrip_and_monodromy(k, n):
    s = _polygon_state(k, n)
    p = polygon_from_xy(s)
    assert xy_from_polygon(p) == s
    assert corrugation_residual(p) == 0
    M = p.monodromy
    for i in range(1, k + 3):
        img = tuple(sum(M[r][c] * p.vertex(i)[c] for c in range(k)) for r in range(k))
        assert img == p.vertex(n + i)


def test_gauge_invariance():
    s = _polygon_state(4, 9)
    p = polygon_from_xy(s)
    rng = random.Random(2)
    factors = [F(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)) for _ in range(9)]
    assert xy_from_polygon(p.rescaled(factors)) == s


def test_constant_coefficient_polygon():
    # V_{i+3} = 2 V_{i+2} + V_{i+1} + V_i
    n = 6
    V = [(F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1))]
    while len(V) < n + 3:
        V.append(tuple(2 * c + b + a for a, b, c in zip(V[-3], V[-2], V[-1])))
    M = tuple(tuple(V[n + c][r] for c in range(3)) for r in range(3))
    s = xy_from_polygon(LiftedPolygon(MapShape(3, n), tuple(V[:n]), M))
    assert s.x == (F(1, 4),) * n
    assert s.y == (F(1, 8),) * n


@pytest.mark.parametrize("k,n", CELLS)
def test_F_and_G_in_coordinates(k, n):
    shape = MapShape(k, n)
    s = _polygon_state(k, n)
    p = polygon_from_xy(s)
    f, g = map_F(p), map_G(p)
    assert xy_from_polygon(f) == map_T(shift(s, shape.rprime + 1))
    assert xy_from_polygon(g) == map_T_inv(shift(s, shape.r + 1))
    assert same_polygon(f, map_F_oracle(p))
    assert corrugation_residual(f) == 0 and corrugation_residual(g) == 0


@pytest.mark.parametrize("k,n", [(3, 5), (4, 9)])
def test_F_G_inverse_up_to_shift(k, n):
    p = polygon_from_xy(_polygon_state(k, n, tag="fg"))
    assert same_polygon(map_G(map_F(p)), p, offset=k)
    assert same_polygon(map_F(map_G(p)), p, offset=k)


@pytest.mark.parametrize("k,n", [(3, 5), (4, 9), (5, 11)])
def test_duality(k, n):
    shape = MapShape(k, n)
    s = _polygon_state(k, n, tag="dual")
    p = polygon_from_xy(s)
    w = dualize(p)
    assert corrugation_residual(w) == 0
    assert xy_from_polygon(w) == scale(map_D(shift(s, shape.rprime)), (-1) ** k)
    assert same_polygon(dualize(map_F(p)), map_G(w))


def test_projective_equality():
    assert projectively_equal((1, 2, 3), (-2, -4, -6))
    assert not projectively_equal((1, 2, 3), (1, 2, 4))


def test_cross_ratio_examples():
    inf = RP1Point.infinity()
    fin = RP1Point.finite
    assert cross_ratio(inf, fin(-1), fin(0), fin(2)) == 2
    assert cross_ratio(fin(0), fin(1), fin(0), fin(2)) == -1
    with pytest.raises(DegenerateQuadruple):
        cross_ratio(fin(1), fin(2), fin(2), fin(1))


def test_cross_ratio_moebius_invariance():
    rng = random.Random(4)
    for _ in range(50):
        pts = [RP1Point.finite(F(rng.randint(-20, 20), rng.randint(1, 9))) for _ in range(4)]
        if len(set(pts)) < 4:
            continue
        a, b, c, d = (F(rng.randint(-9, 9)) for _ in range(4))
        if a * d == b * c:
            continue
        moved = [q.moebius(a, b, c, d) for q in pts]
        assert cross_ratio(*moved) == cross_ratio(*pts)


@pytest.mark.parametrize("k,n", [(3, 5), (4, 9)])
def test_cross_ratio_coords(k, n):
    for t in range(3):
        s = _polygon_state(k, n, t, "crs")
        pq = cross_ratio_coords(polygon_from_xy(s))
        assert pq == project_pq(s)
        assert pq.level == 1


def test_q_formula():
    s = _polygon_state(3, 5, tag="q")
    pq = cross_ratio_coords(polygon_from_xy(s))
    shape = s.shape
    for i in range(1, 6):
        assert pq.qi(i - shape.r - 1) == s.xi(i) / s.yi(i - 1)


# plane reconstruction


def test_branch_counts():
    assert [branch_count(k) for k in (3, 4, 5)] == [1, 4, 10]
    s = _polygon_state(3, 5, tag="plane3")
    with pytest.raises(BranchUnavailable):
        reconstruct_plane_polygon(s, 1)


def test_plane_k3_is_identity_frame():
    s = _polygon_state(3, 5, tag="plane3")
    p = reconstruct_plane_polygon(s, 0)
    assert relative_error(plane_coords(p, 3), xy_vector(s)) < 1e-30
    target = xy_vector(map_T(shift(s, 2)))
    assert relative_error(plane_coords(skip_diagonal_map(p, 3), 3), target) < 1e-30


def test_plane_k4_branches_conjugate():
    s = _polygon_state(4, 9, tag="plane4")
    polys = [reconstruct_plane_polygon(s, b) for b in range(4)]
    assert distinct_branches(polys)
    target = xy_vector(map_T(shift(s, 2)))
    for p in polys:
        assert relative_error(plane_coords(p, 4), xy_vector(s)) < 1e-8
        assert relative_error(plane_coords(skip_diagonal_map(p, 4), 4), target) < 1e-8
    with pytest.raises(BranchUnavailable):
        reconstruct_plane_polygon(s, 4)


def test_skip_diagonal_projective_equivariance():
    s = _polygon_state(3, 6, tag="equiv")
    p = reconstruct_plane_polygon(s, 0)
    g = [[2, 1, 0], [0, 3, 1], [1, 0, 1]]
    lhs = skip_diagonal_map(p.transformed(g), 3).array()
    rhs = skip_diagonal_map(p, 3).transformed(g).array()
    for a, b in zip(lhs, rhs):
        assert np.linalg.matrix_rank(np.vstack([a, b]), tol=1e-8 * np.abs(a).max()) == 1


def test_collinear_window_raises():
    verts = [[mpmath.mpc(v) for v in row] for row in ([1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3])]
    p = PlanePolygon(verts, mpmath.eye(3))
    with pytest.raises(ToleranceExceeded):
        skip_diagonal_map(p, 3)
    with pytest.raises(ToleranceExceeded):
        plane_coords(p, 3)
