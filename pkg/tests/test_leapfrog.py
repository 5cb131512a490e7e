import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentagram.dynamics import map_T, project_pq
from pentagram.errors import SingularConfiguration
from pentagram.exact import GaussRational
from pentagram.geometry import RP1Point
from pentagram.leapfrog import (
    ComplexQuadruple,
    LeapfrogState,
    circle_pattern_check,
    circle_pattern_images,
    involution_matrix,
    lagrangian_residual,
    leapfrog_coords,
    leapfrog_orbit,
    leapfrog_p,
    leapfrog_point,
    leapfrog_point_affine,
    leapfrog_step,
    men2_plus,
    men_relations,
    random_leapfrog,
    transformed,
    two_form_pullback_defect,
    two_form_value,
)

F = Fraction
P = RP1Point.finite


def test_local_rule_examples():
    assert leapfrog_point(P(0), P(1), P(2), P(F(1, 2))) == P(F(3, 2))
    for a in (F(3), F(-2, 7), F(1, 5)):
        assert leapfrog_point(P(-1), P(0), P(1), P(a)) == P(-a)


def test_local_rule_handles_infinity():
    inf = RP1Point.infinity()
    # the involution fixing 0 and swapping -1, 1 is w -> -w, so infinity is fixed
    assert leapfrog_point(P(-1), P(0), P(1), inf) == inf
    assert leapfrog_point(P(-1), P(0), P(1), P(5)) == P(-5)


def test_local_rule_is_an_involution():
    rng = random.Random(1)
    for _ in range(50):
        pts = rng.sample(range(-30, 30), 4)
        prev, mid, nxt, minus = (P(F(v, 3)) for v in pts)
        plus = leapfrog_point(prev, mid, nxt, minus)
        assert leapfrog_point(prev, mid, nxt, plus) == minus
        m = involution_matrix(mid, prev, nxt)
        assert m[0][0] + m[1][1] == 0


def test_local_rule_degenerate():
    with pytest.raises(SingularConfiguration):
        leapfrog_point(P(1), P(0), P(1), P(2))
    with pytest.raises(SingularConfiguration):
        leapfrog_point(P(-1), P(0), P(1), P(0))


@settings(max_examples=80)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=4, max_size=4, unique=True))
def test_projective_rule_matches_affine_oracle(pts):
    prev, mid, nxt, minus = pts
    try:
        want = leapfrog_point_affine(prev, mid, nxt, minus)
    except SingularConfiguration:
        assert leapfrog_point(P(prev), P(mid), P(nxt), P(minus)).v == 0
        return
    assert leapfrog_point(P(prev), P(mid), P(nxt), P(minus)) == P(want)
    assert men_relations(prev, mid, nxt, minus, want) == (0, -1, -1)


def test_men_relations_fail_together_off_orbit():
    rng = random.Random(2)
    for _ in range(50):
        prev, mid, nxt, minus, plus = (F(v, 4) for v in rng.sample(range(-40, 40), 5))
        if plus == leapfrog_point_affine(prev, mid, nxt, minus):
            continue
        m1, m2, m3 = men_relations(prev, mid, nxt, minus, plus)
        assert m1 != 0 and m2 != -1 and m3 != -1


def test_coordinates_example():
    st_ = LeapfrogState.from_numbers([0, 2, 4], [1, 3, 5])
    assert leapfrog_coords(st_).x[0] == F(1, 3)


@pytest.mark.parametrize("closed", [True, False])
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_leapfrog_is_T2(n, closed):
    rng = random.Random(10 * n + closed)
    for _ in range(3):
        s = random_leapfrog(n, rng, closed=closed)
        assert leapfrog_coords(leapfrog_step(s)) == map_T(leapfrog_coords(s))


def test_coords_level_and_p():
    rng = random.Random(3)
    for closed in (True, False):
        s = random_leapfrog(5, rng, closed=closed)
        xy = leapfrog_coords(s)
        for i in range(1, 6):
            assert leapfrog_p(s, i) == xy.yi(i) / xy.xi(i)
        assert project_pq(xy).level == 1


def test_coords_moebius_invariant():
    rng = random.Random(4)
    for closed in (True, False):
        s = random_leapfrog(5, rng, closed=closed)
        for g in (((2, 1), (1, 1)), ((0, 1), (1, 0)), ((3, -2), (5, 7))):
            assert leapfrog_coords(transformed(s, g)) == leapfrog_coords(s)


def test_orbit_relations_hold_everywhere():
    s = random_leapfrog(5, random.Random(5))
    orbit = leapfrog_orbit(s, 4)
    assert len(orbit) == 5
    for a, b in zip(orbit, orbit[1:]):
        assert a.S == b.S_minus
        sm, cur = a.affine()
        _, plus = b.affine()
        for i in range(5):
            prev, nxt = cur[(i - 1) % 5], cur[(i + 1) % 5]
            assert men_relations(prev, cur[i], nxt, sm[i], plus[i]) == (0, -1, -1)


def test_lagrangian_residual():
    s = random_leapfrog(6, random.Random(6))
    sm, cur = s.affine()
    _, plus = leapfrog_step(s).affine()
    assert lagrangian_residual(sm, cur, plus) == [0] * 6
    bumped = list(plus)
    bumped[2] += 1
    res = lagrangian_residual(sm, cur, bumped)
    assert [j for j, v in enumerate(res) if v] == [2]


def test_lagrangian_residual_is_men1():
    rng = random.Random(7)
    for _ in range(20):
        vals = [F(v, 5) for v in rng.sample(range(-50, 50), 12)]
        prev, cur, nxt = vals[:4], vals[4:8], vals[8:]
        res = lagrangian_residual(prev, cur, nxt)
        for i in range(4):
            m1, _, _ = men_relations(cur[i - 1], cur[i], cur[(i + 1) % 4], prev[i], nxt[i])
            assert res[i] == m1


def test_two_form_example_and_antisymmetry():
    s = LeapfrogState.from_numbers([0, 5, 9], [2, 7, 1])
    u = [1, 0, 0, 0, 0, 0]
    v = [0, 0, 0, 1, 0, 0]
    assert two_form_value(s, u, v) == F(1, 4)
    assert two_form_value(s, v, u) == -F(1, 4)
    assert two_form_value(s, u, u) == 0


def test_two_form_invariant():
    rng = random.Random(8)
    for _ in range(3):
        s = random_leapfrog(4, rng)
        for _ in range(3):
            u = [F(rng.randint(-3, 3)) for _ in range(8)]
            v = [F(rng.randint(-3, 3)) for _ in range(8)]
            assert two_form_pullback_defect(s, u, v) == 0


def test_circle_pattern_example():
    q = ComplexQuadruple.of(0, 1, 2, F(1, 2))
    assert men2_plus(q.s_prev, q.s_mid, q.s_next, q.s_minus) == GaussRational(F(3, 2))
    assert circle_pattern_images(q) == tuple(GaussRational(v) for v in (-1, 1, -2, 2))
    assert circle_pattern_check(q)
    shifted = ComplexQuadruple.of(*(GaussRational(v, 3) for v in (0, 1, 2, F(1, 2))))
    assert circle_pattern_check(shifted)


def test_circle_pattern_random():
    rng = random.Random(9)
    done = 0
    while done < 100:
        vals = [GaussRational(F(rng.randint(-9, 9), rng.randint(1, 4)), F(rng.randint(-9, 9), rng.randint(1, 4)))
                for _ in range(4)]
        try:
            ok = circle_pattern_check(ComplexQuadruple(*vals))
        except (SingularConfiguration, ZeroDivisionError):
            continue
        assert ok
        done += 1


def test_men2_agrees_with_local_rule_on_reals():
    rng = random.Random(11)
    for _ in range(30):
        prev, mid, nxt, minus = (F(v, 2) for v in rng.sample(range(-30, 30), 4))
        got = men2_plus(prev, mid, nxt, minus)
        assert leapfrog_point(P(prev), P(mid), P(nxt), P(minus)) == P(got)


def test_state_validation():
    with pytest.raises(ValueError):
        LeapfrogState.from_numbers([1, 2], [3])
    with pytest.raises(ValueError):
        LeapfrogState.from_numbers([1, 2], [3, 4], ((1, 2), (2, 4)))
    s = LeapfrogState.from_numbers([1, 2, 3], [4, 4, 5])
    assert s.violations()
