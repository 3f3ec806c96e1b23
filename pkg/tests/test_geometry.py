"""Predicates on bodies: frozen examples, oracle comparisons, invariants."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raydepth.geometry import (
    Ball,
    DimensionMismatch,
    Direction,
    Point,
    VPolytope,
    _contains_lp,
    _ray_lp,
    bounding_box,
    contains,
    convex_hull_2d,
    intersect_nonempty,
    project,
    ray_intersects,
    sq_distance,
    strictly_outside,
)
from raydepth.rationals import vec

F = Fraction


def rand_polygon(rng, span=5, nmax=7, d=2):
    k = rng.randint(1, nmax)
    verts = [tuple(F(rng.randint(-span * 4, span * 4), 4) for _ in range(d)) for _ in range(k)]
    return VPolytope.of(*verts)


# --- contains -----------------------------------------------------------


def test_contains_ball_center_and_outside():
    b = Ball.of((0, 0), 1)
    assert contains(b, Point.of(0, 0))
    assert not contains(b, Point.of(2, 0))
    assert contains(b, Point.of(1, 0))  # boundary is inside (closed body)


def test_contains_triangle_interior_point():
    t = VPolytope.of((0, 0), (2, 0), (0, 2))
    # lambda-system solved by hand: (1/2, 1/4, 1/4)
    assert contains(t, Point.of(F(1, 2), F(1, 2)))
    assert not contains(t, Point.of(2, 2))


def test_contains_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        contains(Ball.of((0, 0), 1), Point.of(1, 2, 3))


def test_contains_fast_path_matches_lp():
    rng = random.Random(11)
    for _ in range(120):
        poly = rand_polygon(rng)
        x = Point.of(F(rng.randint(-30, 30), 5), F(rng.randint(-30, 30), 5))
        assert contains(poly, x) == _contains_lp(poly, x)


def test_contains_degenerate_segment_and_point():
    seg = VPolytope.of((0, 0), (2, 2))
    assert contains(seg, Point.of(1, 1))
    assert not contains(seg, Point.of(1, 0))
    assert not contains(seg, Point.of(3, 3))
    pt = VPolytope.of((1, 1))
    assert contains(pt, Point.of(1, 1))
    assert not contains(pt, Point.of(1, 0))


# --- project ------------------------------------------------------------


def test_project_segment_orthogonal_foot():
    seg = VPolytope.of((1, -1), (1, 1))
    proj = project(seg, Point.of(0, 0))
    assert proj.point == Point.of(1, 0)
    assert proj.sq_distance == 1
    # dense sampling of the segment never beats the reported distance
    best = min(1.0**2 + (-1 + t / 500) ** 2 for t in range(1001))
    assert best >= float(proj.sq_distance) - 1e-12


def test_project_point_inside_is_identity():
    t = VPolytope.of((0, 0), (4, 0), (0, 4))
    p = Point.of(1, 1)
    proj = project(t, p)
    assert proj.point == p and proj.sq_distance == 0
    b = Ball.of((0, 0), 2)
    proj = project(b, p)
    assert proj.point == p and proj.sq_distance == 0


def test_project_ball_collinear():
    b = Ball.of((0, 0), 1)
    proj = project(b, Point.of(2, 0))
    assert abs(float(proj.point.coords[0]) - 1.0) < 1e-12
    assert abs(float(proj.point.coords[1])) < 1e-12
    assert abs(float(proj.sq_distance) - 1.0) < 1e-12


def test_project_idempotent_polytope():
    rng = random.Random(3)
    for _ in range(60):
        poly = rand_polygon(rng)
        x = Point.of(F(rng.randint(-40, 40), 3), F(rng.randint(-40, 40), 3))
        q = project(poly, x).point
        q2 = project(poly, q).point
        assert q2 == q


def test_project_variational_inequality():
    # (v - pi).(x - pi) <= 0 for every vertex v; exact for polytopes
    rng = random.Random(5)
    for _ in range(80):
        poly = rand_polygon(rng)
        x = Point.of(F(rng.randint(-40, 40), 3), F(rng.randint(-40, 40), 3))
        pi = project(poly, x).point
        for v in poly.vertices:
            lhs = sum(
                (a - b) * (c - b2)
                for a, b, c, b2 in zip(v.coords, pi.coords, x.coords, pi.coords)
            )
            assert lhs <= 0


def test_project_enum_matches_hull_path_2d():
    from raydepth.geometry import _project_enum

    rng = random.Random(9)
    for _ in range(40):
        poly = rand_polygon(rng, nmax=6)
        x = vec([F(rng.randint(-40, 40), 3), F(rng.randint(-40, 40), 3)])
        q_enum, sq_enum = _project_enum(poly.vertex_vecs(), x, 2)
        proj = project(poly, Point(x))
        assert sq_enum == proj.sq_distance


def test_project_3d_simplex():
    simplex = VPolytope.of((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    proj = project(simplex, Point.of(1, 1, 1))
    # nearest point on the facet x+y+z=1 is (1/3,1/3,1/3)
    assert proj.point == Point.of(F(1, 3), F(1, 3), F(1, 3))
    assert proj.sq_distance == F(4, 3)


# --- ray_intersects -----------------------------------------------------


def test_ray_ball_hits_and_misses():
    b = Ball.of((2, 0), F(1, 2))
    assert ray_intersects(b, Point.of(0, 0), Direction.of(1, 0))
    assert not ray_intersects(b, Point.of(0, 0), Direction.of(-1, 0))


def test_ray_triangle_vertex_hit():
    t = VPolytope.of((1, 1), (2, 1), (1, 2))
    assert ray_intersects(t, Point.of(0, 0), Direction.of(1, 1))
    # oracle: dense t-sampling finds the hit too
    assert _dense_ray_oracle(t, (0.0, 0.0), (1.0, 1.0))


def test_ray_tangent_grazing_is_hit():
    # ray along y=1 grazes the unit ball at (0,1)
    b = Ball.of((0, 0), 1)
    assert ray_intersects(b, Point.of(-5, 1), Direction.of(1, 0))
    assert not ray_intersects(b, Point.of(-5, F(101, 100)), Direction.of(1, 0))


def test_ray_scaling_invariance():
    rng = random.Random(13)
    for _ in range(50):
        poly = rand_polygon(rng)
        p = Point.of(F(rng.randint(-30, 30), 3), F(rng.randint(-30, 30), 3))
        u = (rng.randint(-7, 7), rng.randint(-7, 7))
        if u == (0, 0):
            u = (1, 0)
        hit1 = ray_intersects(poly, p, Direction.of(*u))
        hit2 = ray_intersects(poly, p, Direction.of(3 * u[0], 3 * u[1]))
        assert hit1 == hit2


def test_contains_implies_ray_hit_any_direction():
    t = VPolytope.of((0, 0), (4, 0), (0, 4))
    p = Point.of(1, 1)
    for u in [(1, 0), (0, 1), (-1, -1), (2, -3)]:
        assert ray_intersects(t, p, Direction.of(*u))


def _dense_ray_oracle(poly, p, u, samples=10**4, reach=40.0):
    """Float oracle: walk t over [0, reach] and test polygon membership."""
    hull = [tuple(float(c) for c in v) for v in poly.hull2()]
    for i in range(samples + 1):
        t = reach * i / samples
        x = (p[0] + t * u[0], p[1] + t * u[1])
        if _polygon_contains_float(hull, x, 1e-9):
            return True
    return False


def _polygon_contains_float(hull, x, tol):
    if len(hull) == 1:
        return abs(x[0] - hull[0][0]) <= tol and abs(x[1] - hull[0][1]) <= tol
    if len(hull) == 2:
        (ax, ay), (bx, by) = hull
        cross = (bx - ax) * (x[1] - ay) - (by - ay) * (x[0] - ax)
        if abs(cross) > tol:
            return False
        dot = (x[0] - ax) * (bx - ax) + (x[1] - ay) * (by - ay)
        return -tol <= dot <= (bx - ax) ** 2 + (by - ay) ** 2 + tol
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < -tol:
            return False
    return True


def test_ray_fast_path_matches_lp():
    rng = random.Random(17)
    for _ in range(150):
        poly = rand_polygon(rng)
        p = Point.of(F(rng.randint(-30, 30), 3), F(rng.randint(-30, 30), 3))
        u = (rng.randint(-7, 7), rng.randint(-7, 7))
        if u == (0, 0):
            u = (1, 0)
        d = Direction.of(*u)
        assert ray_intersects(poly, p, d) == _ray_lp(poly, p, d)


def test_ray_oracle_agreement_random():
    # oracle hits imply LP hits; no oracle hit where LP says miss
    rng = random.Random(19)
    for _ in range(60):
        poly = rand_polygon(rng)
        p = (rng.uniform(-8, 8), rng.uniform(-8, 8))
        ang = rng.uniform(0, 2 * math.pi)
        u = (math.cos(ang), math.sin(ang))
        p_exact = Point.of(F(round(p[0] * 720), 720), F(round(p[1] * 720), 720))
        u_exact = Direction.of(F(round(u[0] * 10**6), 10**6), F(round(u[1] * 10**6), 10**6))
        lp_hit = ray_intersects(poly, p_exact, u_exact)
        oracle_hit = _dense_ray_oracle(
            poly, tuple(float(c) for c in p_exact.coords), tuple(float(c) for c in u_exact.vec)
        )
        if oracle_hit:
            assert lp_hit


# --- intersect_nonempty -------------------------------------------------


def square(x0, y0, s=2):
    return VPolytope.of((x0, y0), (x0 + s, y0), (x0 + s, y0 + s), (x0, y0 + s))


def test_intersect_disjoint_squares():
    res = intersect_nonempty([square(0, 0), square(10, 10)])
    assert not res.nonempty and res.mode == "exact"


def test_intersect_body_with_itself():
    s = square(0, 0)
    res = intersect_nonempty([s, s])
    assert res.nonempty and res.mode == "exact"
    assert contains(s, res.witness)


def test_intersect_three_squares_common_point():
    s1 = square(0, 0)  # [0,2]^2
    s2 = square(1, 1)  # [1,3]^2
    s3 = VPolytope.of((F(3, 2), F(3, 2)), (F(5, 2), F(3, 2)), (F(5, 2), F(5, 2)), (F(3, 2), F(5, 2)))
    res = intersect_nonempty([s1, s2, s3])
    assert res.nonempty and res.mode == "exact"
    for s in (s1, s2, s3):
        assert contains(s, res.witness)


def test_intersect_balls_approximate():
    b1 = Ball.of((0, 0), 1)
    b2 = Ball.of((1, 0), 1)
    res = intersect_nonempty([b1, b2])
    assert res.nonempty and res.mode == "approximate"
    far = intersect_nonempty([b1, Ball.of((5, 0), 1)])
    assert not far.nonempty and far.mode == "approximate"


def test_intersect_empty_list_rejected():
    with pytest.raises(ValueError):
        intersect_nonempty([])


# --- misc ----------------------------------------------------------------


def test_strictly_outside_ball_uses_tau():
    b = Ball.of((0, 0), 1)
    assert strictly_outside(b, Point.of(2, 0))
    assert not strictly_outside(b, Point.of(1, 0))
    assert not strictly_outside(b, Point.of(F(10**9 + 1, 10**9), 0))


def test_bounding_box():
    lo, hi = bounding_box([Ball.of((0, 0), 1), square(3, 3)])
    assert lo == vec([-1, -1]) and hi == vec([5, 5])


def test_convex_hull_2d_collinear():
    pts = [vec([0, 0]), vec([1, 1]), vec([2, 2])]
    hull = convex_hull_2d(pts)
    assert set(hull) == {vec([0, 0]), vec([2, 2])}


@settings(max_examples=80, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
        min_size=1,
        max_size=8,
    ),
    st.tuples(st.integers(-10, 10), st.integers(-10, 10)),
)
def test_projection_never_farther_than_vertices(verts, query):
    poly = VPolytope.of(*verts)
    x = Point.of(*query)
    proj = project(poly, x)
    for v in poly.vertices:
        assert proj.sq_distance <= sq_distance(VPolytope.of(tuple(v.coords)), x)
