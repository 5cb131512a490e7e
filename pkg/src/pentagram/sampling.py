"""Seeded random exact states.

Numerators are drawn uniformly from [-9, 9] minus zero and denominators from
[1, 9]; draws that hit a singular configuration are rejected and redrawn.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, TypeVar

from pentagram.dynamics import CornerState, MapShape, PQState, XYState
from pentagram.errors import PentagramError

T = TypeVar("T")

MAX_REJECTIONS = 10_000


def rng_for(seed: int, *tags) -> random.Random:
    """Independent deterministic stream per (seed, tags)."""
    return random.Random(repr((seed,) + tags))


def rand_rational(rng: random.Random, positive: bool = False) -> Fraction:
    num = rng.randint(1, 9)
    if not positive and rng.random() < 0.5:
        num = -num
    return Fraction(num, rng.randint(1, 9))


def draw(rng: random.Random, make: Callable[[random.Random], T], accept: Callable[[T], bool]) -> T:
    for _ in range(MAX_REJECTIONS):
        candidate = make(rng)
        try:
            if accept(candidate):
                return candidate
        except (PentagramError, ZeroDivisionError):
            continue
    raise RuntimeError("could not draw a regular random state")


def random_xy(shape: MapShape, rng: random.Random, accept: Callable[[XYState], bool] | None = None) -> XYState:
    def make(g):
        return XYState(shape, [rand_rational(g) for _ in range(shape.n)], [rand_rational(g) for _ in range(shape.n)])

    def ok(s):
        return s.is_regular() and (accept is None or accept(s))

    return draw(rng, make, ok)


def random_pq(shape: MapShape, rng: random.Random, level=None,
              accept: Callable[[PQState], bool] | None = None) -> PQState:
    """Random (p, q) point; with ``level`` given, q_n is solved for."""
    def make(g):
        p = [rand_rational(g) for _ in range(shape.n)]
        q = [rand_rational(g) for _ in range(shape.n)]
        if level is not None:
            rest = Fraction(1)
            for a in p:
                rest *= a
            for b in q[:-1]:
                rest *= b
            q[-1] = Fraction(level) / rest
        return PQState(shape, p, q)

    def ok(s):
        good = all(s.p) and all(s.q) and all(1 + v for v in s.p) and all(1 + v for v in s.q)
        return good and (accept is None or accept(s))

    return draw(rng, make, ok)


def random_corner(n: int, rng: random.Random, accept: Callable[[CornerState], bool] | None = None) -> CornerState:
    def make(g):
        return CornerState([rand_rational(g) for _ in range(n)], [rand_rational(g) for _ in range(n)])

    def ok(s):
        return s.is_regular() and (accept is None or accept(s))

    return draw(rng, make, ok)
