import math
from fractions import Fraction

import pytest

from pentagram.dynamics import MapShape, XYState, map_T
from pentagram.exact import BiPoly, PolyMatrix, poly_det
from pentagram.lax import (
    boundary_A,
    boundary_A_oracle,
    casimir_coefficients_ok,
    det_A_expected,
    expected_independent_count,
    integral_jacobian_rank,
    integrals_conserved,
    involution_violations,
    lax_L,
    monodromy_charpoly_check,
    monodromy_conjugation_check,
    monodromy_M,
    newton_polygon,
    refactorization,
    spectral,
    verify_tcp,
    z_matrix,
    zero_curvature_check,
)
from pentagram.sampling import random_xy, rng_for

LAM = BiPoly.lam()
Z = BiPoly.z()
CELLS = [(2, 3), (2, 4), (2, 5), (3, 5), (3, 6), (4, 7), (4, 8)]


def _state(k, n, t=0, tag="lax"):
    return random_xy(MapShape(k, n), rng_for(3, tag, k, n, t), lambda s: map_T(s).is_regular())


def test_lax_L_examples():
    s3 = XYState.of(3, [1, 1, 1], [1, 1, 1])
    assert lax_L(s3, 1) == PolyMatrix([[0, 1, 2], [-LAM, 0, 0], [0, 1, 1]])
    s2 = XYState.of(2, [2, 2], [3, 3])
    L = lax_L(s2, 1)
    assert L == PolyMatrix([[-2 * LAM, 5], [-LAM, 1]])
    assert poly_det(L) == 3 * LAM


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_det_L_is_lambda_monomial(k):
    s = _state(k, 2 * k)
    for i in range(1, s.shape.n + 1):
        assert poly_det(lax_L(s, i)) == (-1) ** k * s.yi(i) * LAM


def test_monodromy_small_case():
    s = XYState.of(2, [1, 1], [1, 1])
    M = monodromy_M(s)
    assert M[1, 1] == 1 - 2 * LAM


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12])
def test_z_power_is_minus_z(n):
    assert z_matrix(n) ** n == PolyMatrix.identity(n, -Z)


@pytest.mark.parametrize("k,n", CELLS + [(2, 2)])
def test_boundary_matrix_and_determinant(k, n):
    s = _state(k, n)
    assert boundary_A(s) == boundary_A_oracle(s)
    assert poly_det(boundary_A(s)) == det_A_expected(s)


def test_boundary_oracle_entries():
    s = _state(3, 5)
    A = boundary_A_oracle(s)
    assert A[0, 2] == s.xi(2) - Z * s.yi(2)
    assert A[0, 4] == BiPoly.const(s.xi(2) + s.yi(2))
    assert A[3, 0] == -Z * (s.xi(5) - Z * s.yi(5))


@pytest.mark.parametrize("k,n", CELLS)
def test_spectral_corners(k, n):
    s = _state(k, n)
    t = spectral(s)
    assert t.I(0, 0) == 1 and t.I(0, 1) == 1
    assert t.I(n, k - 1) == (-1) ** (n * (k - 1)) * math.prod(s.x)
    assert t.I(n, k) == (-1) ** (n * k) * math.prod(s.y)


@pytest.mark.parametrize("k,n", [(2, 3), (3, 5), (4, 7), (3, 6)])
def test_tcp(k, n):
    assert verify_tcp(_state(k, n))


def test_newton_polygon():
    for t in range(20):
        rep = newton_polygon(spectral(_state(3, 5, t, "newton")))
        assert rep.ok
        assert {(0, 0), (0, 1), (5, 3), (5, 2)} <= rep.support
    rep = newton_polygon(spectral(_state(3, 6)))
    assert sorted({i for i, _ in rep.casimir_positions}) == [0, 3, 6]
    assert len(set(rep.casimir_positions)) == 2 * (math.gcd(2, 6) + 1)


@pytest.mark.parametrize("k,n", [(2, 3), (2, 5), (3, 5), (3, 6), (4, 7), (5, 9)])
def test_zero_curvature(k, n):
    s = _state(k, n)
    assert zero_curvature_check(s)
    assert monodromy_conjugation_check(s)


@pytest.mark.parametrize("k,n", [(2, 3), (3, 5), (4, 7)])
def test_refactorization(k, n):
    ref = refactorization(_state(k, n))
    assert ref.product_ok and ref.swapped_ok


@pytest.mark.parametrize("k,n", [(2, 3), (2, 5), (3, 5), (4, 7)])
def test_monodromy_charpoly(k, n):
    assert monodromy_charpoly_check(_state(k, n))
    assert monodromy_charpoly_check(XYState.of(k, [1] * n, [1] * n))


@pytest.mark.parametrize("k,n", [(2, 3), (3, 5), (3, 6), (4, 7)])
def test_integrals_conserved(k, n):
    assert integrals_conserved(_state(k, n), 10)


def test_conservation_fails_for_a_perturbed_map():
    s = _state(3, 5)
    other = XYState(s.shape, s.x, s.y[:-1] + (s.y[-1] + 1,))
    assert spectral(map_T(s)).P != spectral(other).P


@pytest.mark.parametrize("k,n", [(2, 5), (3, 5), (3, 6), (4, 7)])
def test_involution_and_count(k, n):
    s = _state(k, n)
    assert involution_violations(s) == []
    assert casimir_coefficients_ok(s)
    assert integral_jacobian_rank(s) == expected_independent_count(s.shape)


def test_trace_invariance_under_refactorization():
    s = _state(3, 5)
    before, after = boundary_A(s), boundary_A(map_T(s))
    assert poly_det(PolyMatrix.identity(5) + before * LAM) == poly_det(PolyMatrix.identity(5) + after * LAM)
    assert sum((before[i, i] for i in range(5)), BiPoly.zero()) == sum((after[i, i] for i in range(5)), BiPoly.zero())


def test_jets_carry_fraction_values():
    s = _state(2, 3)
    assert all(isinstance(v, Fraction) for _, v in spectral(s).items())
