"""Exact simplex sanity: known optima, Gordan exclusivity, random cross-checks."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raydepth.lp import (
    LPStatus,
    extreme_value,
    feasible_point,
    max_margin,
    origin_in_hull,
    positive_direction,
    solve,
)

F = Fraction


def test_solve_known_optimum():
    # max x + y st x + 2y <= 4, 3x + y <= 6  ->  slack form
    # x + 2y + s1 = 4 ; 3x + y + s2 = 6
    res = solve(
        c=[1, 1, 0, 0],
        A=[[1, 2, 1, 0], [3, 1, 0, 1]],
        b=[4, 6],
        maximize=True,
    )
    assert res.status is LPStatus.OPTIMAL
    # optimum at intersection: x = 8/5, y = 6/5
    assert res.objective == F(14, 5)
    assert res.x[0] == F(8, 5) and res.x[1] == F(6, 5)


def test_solve_infeasible():
    # x = 1 and x = 2 simultaneously
    res = solve(c=[0], A=[[1], [1]], b=[1, 2])
    assert res.status is LPStatus.INFEASIBLE


def test_solve_unbounded():
    # max x st x - s = 0
    res = solve(c=[1, 0], A=[[1, -1]], b=[0], maximize=True)
    assert res.status is LPStatus.UNBOUNDED


def test_solve_degenerate_redundant_rows():
    res = solve(c=[1, 1], A=[[1, 1], [2, 2]], b=[1, 2])
    assert res.status is LPStatus.OPTIMAL
    assert res.objective == 1


def test_feasible_point_simplex_membership():
    # (1/2, 1/2) in conv{(0,0),(2,0),(0,2)}: lambda = (1/2, 1/4, 1/4)
    A = [[0, 2, 0], [0, 0, 2], [1, 1, 1]]
    b = [F(1, 2), F(1, 2), 1]
    lam = feasible_point(A, b)
    assert lam is not None
    assert sum(lam) == 1
    assert all(v >= 0 for v in lam)


def test_origin_in_hull_basic():
    assert origin_in_hull([(F(1), F(0)), (F(-1), F(0))]) is not None
    assert origin_in_hull([(F(1), F(0))]) is None
    mu = origin_in_hull([(F(1), F(0)), (F(0), F(1)), (F(-1), F(-1))])
    assert mu is not None
    sx = sum(m * v for m, v in zip(mu, [F(1), F(0), F(-1)]))
    sy = sum(m * v for m, v in zip(mu, [F(0), F(1), F(-1)]))
    assert sx == 0 and sy == 0 and sum(mu) == 1


def test_positive_direction_basic():
    u = positive_direction([(F(1), F(0)), (F(1), F(1))])
    assert u is not None
    assert u[0] >= 1 and u[0] + u[1] >= 1
    assert positive_direction([(F(1), F(0)), (F(-1), F(0))]) is None


@settings(max_examples=200, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(lambda v: v != (0, 0)),
        min_size=1,
        max_size=7,
    )
)
def test_gordan_exclusive(vectors):
    vs = [tuple(map(F, v)) for v in vectors]
    mu = origin_in_hull(vs)
    u = positive_direction(vs)
    assert (mu is None) != (u is None)
    if mu is not None:
        assert all(m >= 0 for m in mu) and sum(mu) == 1
        for i in range(2):
            assert sum(m * v[i] for m, v in zip(mu, vs)) == 0
    else:
        assert all(sum(ui * vi for ui, vi in zip(u, v)) >= 1 for v in vs)


def test_max_margin_strip():
    # strip 0 < x < 1: signed rows x >= 0 and -x >= -1; best margin is 1/2
    t, x = max_margin([(F(1), F(0)), (F(-1), F(0))], [F(0), F(-1)])
    assert t == F(1, 2)
    assert x[0] == F(1, 2)


def test_max_margin_infeasible_open():
    # x >= 1 and -x >= 0 cannot both hold strictly; weak margin is <= 0
    t, _ = max_margin([(F(1),), (F(-1),)], [F(1), F(0)])
    assert t <= 0


def test_extreme_value_box_and_unbounded():
    rows = [(F(1), F(0)), (F(-1), F(0)), (F(0), F(1)), (F(0), F(-1))]
    rhs = [F(0), F(-2), F(0), F(-3)]
    assert extreme_value((F(1), F(0)), rows, rhs) == 2
    assert extreme_value((F(0), F(1)), rows, rhs) == 3
    assert extreme_value((F(1), F(1)), rows[:2], rhs[:2]) is None  # free in y


def test_origin_in_hull_against_angular_gap_oracle():
    # 2D oracle: 0 in conv of nonzero vectors iff the largest angular gap
    # between consecutive directions is at most pi.
    import math

    rng = random.Random(7)
    for _ in range(200):
        k = rng.randint(1, 6)
        vs = []
        for _ in range(k):
            v = (F(rng.randint(-5, 5)), F(rng.randint(-5, 5)))
            if v == (0, 0):
                v = (F(1), F(0))
            vs.append(v)
        angles = sorted(math.atan2(float(v[1]), float(v[0])) for v in vs)
        gaps = [b - a for a, b in zip(angles, angles[1:])]
        gaps.append(2 * math.pi - (angles[-1] - angles[0]))
        maxgap = max(gaps)
        if abs(maxgap - math.pi) < 1e-9:
            continue  # boundary case, float oracle cannot call it
        assert (origin_in_hull(vs) is not None) == (maxgap < math.pi)
