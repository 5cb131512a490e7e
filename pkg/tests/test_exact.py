import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentagram.dynamics import XYState, map_T
from pentagram.errors import SingularState
from pentagram.exact import BiPoly, GaussRational, Jet, PolyMatrix, as_rational, int_matrix_rank, jet_eval, poly_det
from pentagram.exact.jet import jacobian, seed
from pentagram.exact.linalg import nullspace, rational_rank, solve
from pentagram.exact.rational import decimal_string, format_rational

LAM = BiPoly.lam()
Z = BiPoly.z()

nonzero = st.fractions(min_value=-50, max_value=50, max_denominator=60).filter(bool)


def test_as_rational_parses_strings_exactly():
    assert as_rational("1/3") == Fraction(1, 3)
    assert as_rational("-7") == -7
    assert as_rational(Fraction(2, 4)) == Fraction(1, 2)


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", "", True])
def test_as_rational_rejects_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        as_rational(bad)


def test_format_and_decimal():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4)) == "4"
    assert decimal_string(Fraction(1, 3)) == "0.33333333333333331"
    assert decimal_string(Fraction(0)) == "0"


@settings(max_examples=300)
@given(nonzero, nonzero)
def test_rational_normalization(a, b):
    q = a / b
    assert q * (b / a) == 1
    assert q.denominator > 0
    assert gcd(abs(q.numerator), q.denominator) == 1


def test_rational_bulk_inverse_pairs():
    rng = random.Random(7)
    for _ in range(10_000):
        a = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))
        b = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))
        assert (a / b) * (b / a) == 1


@given(nonzero, nonzero, nonzero, nonzero)
def test_gauss_rational_field(a, b, c, d):
    u, v = GaussRational(a, b), GaussRational(c, d)
    assert (u * v) / v == u
    assert u * u.inverse() == 1
    assert u - u == 0
    assert (u + v) * v == u * v + v * v


def test_gauss_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussRational(1, 1) / GaussRational(0, 0)


def test_bipoly_ring_basics():
    p = 1 + LAM * Z
    assert p.coeff(1, 1) == 1 and p.coeff(0, 0) == 1
    assert (p - p).is_zero()
    assert ((1 + Z) ** 3).coeff(0, 2) == 3
    assert ((1 + Z) ** 3).exact_div(1 + Z) == (1 + Z) ** 2


def test_bipoly_no_stored_zeros():
    p = LAM + Z - LAM
    assert p.support() == {(0, 1)}


def test_poly_det_small_cases():
    assert poly_det(PolyMatrix([[LAM * Z]])) == LAM * Z
    assert poly_det(PolyMatrix([[1, Z], [LAM, 1]])) == 1 - LAM * Z


def test_poly_det_k2_lax_example():
    L1 = PolyMatrix([[-LAM, 2], [-LAM, 1]])
    got = poly_det(PolyMatrix.identity(2) + L1 * Z)
    assert got == 1 + (1 - LAM) * Z + LAM * Z * Z


def test_poly_det_rejects_non_square():
    with pytest.raises(ValueError):
        poly_det(PolyMatrix([[1, 2, 3], [4, 5, 6]]))


def _random_linear_matrix(rng, size):
    def entry():
        return BiPoly({(0, 0): rng.randint(-3, 3), (1, 0): rng.randint(-3, 3), (0, 1): rng.randint(-3, 3)})
    return PolyMatrix([[entry() for _ in range(size)] for _ in range(size)])


def test_poly_det_multiplicative():
    rng = random.Random(3)
    for _ in range(5):
        a, b = _random_linear_matrix(rng, 3), _random_linear_matrix(rng, 3)
        assert poly_det(a @ b) == poly_det(a) * poly_det(b)


def test_bareiss_agrees_with_cofactor():
    # size 7 goes through the fraction-free path; compare with a block product
    rng = random.Random(5)
    a = _random_linear_matrix(rng, 3)
    b = _random_linear_matrix(rng, 4)
    block = PolyMatrix([[a[i, j] if i < 3 and j < 3 else (b[i - 3, j - 3] if i >= 3 and j >= 3 else BiPoly.zero())
                         for j in range(7)] for i in range(7)])
    assert poly_det(block) == poly_det(a) * poly_det(b)


def test_polymatrix_associative():
    rng = random.Random(11)
    a, b, c = (_random_linear_matrix(rng, 3) for _ in range(3))
    assert (a @ b) @ c == a @ (b @ c)


def test_int_matrix_rank():
    assert int_matrix_rank([[0] * 3 for _ in range(3)]) == 0
    assert int_matrix_rank([[int(i == j) for j in range(4)] for i in range(4)]) == 4
    assert int_matrix_rank([[1, 2], [2, 4]]) == 1


def test_rational_linear_algebra():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve(a, [Fraction(3), Fraction(4)]) == [1, 1]
    assert rational_rank([[1, 2, 3], [2, 4, 6]]) == 1
    ns = nullspace([[1, 2, 3], [2, 4, 6]])
    assert len(ns) == 2
    assert all(v[0] + 2 * v[1] + 3 * v[2] == 0 for v in ns)


def test_jet_product_and_quotient():
    j = jet_eval(lambda u, v: u * v, [2, 3])
    assert j.value == 6 and j.grad == (3, 2)
    j = jet_eval(lambda u: 1 / u, [2])
    assert j.value == Fraction(1, 2) and j.grad == (Fraction(-1, 4),)


def test_jet_pole_is_reported():
    with pytest.raises(SingularState):
        jet_eval(lambda u: 1 / u, [0])


def test_jet_matches_finite_differences_on_T3():
    x = [Fraction(v) for v in (1, 2, 3, 4, 5)]
    y = [Fraction(1)] * 5

    def f(u):
        return map_T(XYState.of(3, u[:5], u[5:])).x[0]

    j = f(seed(x + y))
    assert isinstance(j, Jet)
    h = 1e-6
    base = [float(v) for v in x + y]
    for a in range(10):
        up, dn = list(base), list(base)
        up[a] += h
        dn[a] -= h
        fd = (f(up) - f(dn)) / (2 * h)
        assert abs(fd - float(j.grad[a])) < 1e-8 * max(1.0, abs(fd)) + 1e-8


@settings(max_examples=60)
@given(nonzero, nonzero, nonzero)
def test_jet_chain_rule(a, b, c):
    def g(u, v, w):
        return [u * v + w, u / (w * w + 1), v - w * u]

    def f(p, q, r):
        return p * q / (1 + r * r) + p

    point = [a, b, c]
    inner_vals, inner_rows = jacobian(lambda args: g(*args), point)
    outer = jet_eval(f, inner_vals)
    composed = jet_eval(lambda u, v, w: f(*g(u, v, w)), point)
    chain = tuple(sum(outer.grad[k] * inner_rows[k][m] for k in range(3)) for m in range(3))
    assert composed.value == outer.value
    assert composed.grad == chain
