"""Points, directions, and compact convex bodies with exact-where-possible predicates.

Polytope predicates (containment, nearest point, ray intersection, joint
feasibility) are exact over the rationals.  Ball projections involve square
roots, so ball-flavoured results are floating point under a global
tolerance and are flagged approximate by callers that report modes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .lp import LPStatus, feasible_point, solve
from .rationals import (
    ONE,
    ZERO,
    Vec,
    cross2,
    frac,
    gram_solve,
    rationalize,
    vadd,
    vdot,
    vec,
    vfloat,
    vnorm2,
    vscale,
    vsub,
)

#: Global tolerance for ball-flavoured (floating point) results.
TAU = Fraction(1, 10**9)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    coords: Vec

    def __post_init__(self):
        if len(self.coords) < 1:
            raise ValueError("a point needs at least one coordinate")

    @classmethod
    def of(cls, *values) -> "Point":
        return cls(vec(values))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def floats(self) -> tuple[float, ...]:
        return vfloat(self.coords)


@dataclass(frozen=True)
class Direction:
    vec: Vec

    def __post_init__(self):
        if all(v == 0 for v in self.vec):
            raise ValueError("direction must be nonzero")

    @classmethod
    def of(cls, *values) -> "Direction":
        return cls(vec(values))

    @property
    def dim(self) -> int:
        return len(self.vec)


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", frac(self.radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @classmethod
    def of(cls, center: Iterable, radius) -> "Ball":
        return cls(Point(vec(center)), frac(radius))

    @property
    def dim(self) -> int:
        return self.center.dim


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("polytope needs at least one vertex")
        d = self.vertices[0].dim
        if any(v.dim != d for v in self.vertices):
            raise DimensionMismatch("vertices of mixed dimension")

    @classmethod
    def of(cls, *vertices: Iterable) -> "VPolytope":
        return cls(tuple(Point(vec(v)) for v in vertices))

    @property
    def dim(self) -> int:
        return self.vertices[0].dim

    def vertex_vecs(self) -> tuple[Vec, ...]:
        return tuple(v.coords for v in self.vertices)

    def hull2(self) -> tuple[Vec, ...]:
        """Counterclockwise convex hull of the vertices (d = 2 only, cached)."""
        if self.dim != 2:
            raise DimensionMismatch("hull2 is for planar polytopes")
        cached = getattr(self, "_hull2", None)
        if cached is None:
            cached = tuple(convex_hull_2d([v.coords for v in self.vertices]))
            object.__setattr__(self, "_hull2", cached)
        return cached


ConvexBody = Union[Ball, VPolytope]


def body_dim(body: ConvexBody) -> int:
    return body.dim


def _check_dim(body: ConvexBody, x: Point | Direction) -> None:
    if body.dim != x.dim:
        raise DimensionMismatch(f"body is {body.dim}-dimensional, argument is {x.dim}-dimensional")


# ---------------------------------------------------------------------------
# Exact planar hull machinery.
# ---------------------------------------------------------------------------


def convex_hull_2d(points: Sequence[Vec]) -> list[Vec]:
    """Counterclockwise hull by monotone chain; collinear interiors dropped."""
    pts = sorted(set(points))
    if len(pts) <= 1:
        return list(pts)
    lower: list[Vec] = []
    for p in pts:
        while len(lower) >= 2 and cross2(vsub(lower[-1], lower[-2]), vsub(p, lower[-2])) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vec] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross2(vsub(upper[-1], upper[-2]), vsub(p, upper[-2])) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull2_contains(hull: Sequence[Vec], x: Vec) -> bool:
    if len(hull) == 1:
        return hull[0] == x
    if len(hull) == 2:
        a, b = hull
        ab = vsub(b, a)
        if cross2(ab, vsub(x, a)) != 0:
            return False
        t = vdot(vsub(x, a), ab)
        return 0 <= t <= vnorm2(ab)
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if cross2(vsub(b, a), vsub(x, a)) < 0:
            return False
    return True


def _project_segment(a: Vec, b: Vec, x: Vec) -> tuple[Vec, Fraction]:
    ab = vsub(b, a)
    nn = vnorm2(ab)
    if nn == 0:
        q = a
    else:
        t = vdot(vsub(x, a), ab) / nn
        if t < 0:
            t = ZERO
        elif t > 1:
            t = ONE
        q = vadd(a, vscale(ab, t))
    return q, vnorm2(vsub(x, q))


def _tangent_cone(hull: Sequence[Vec], p: Vec) -> tuple[Vec, Vec]:
    """Extreme direction pair (lo, hi) of {v - p : v in hull}, ccw, width < pi.

    Requires p strictly outside the hull, which makes the cone salient and
    the cross-product order on its generators total.
    """
    dirs = [vsub(v, p) for v in hull]
    lo = dirs[0]
    hi = dirs[0]
    for w in dirs[1:]:
        if cross2(w, lo) > 0:
            lo = w
        if cross2(hi, w) > 0:
            hi = w
    return lo, hi


def _cone_contains(lo: Vec, hi: Vec, u: Vec) -> bool:
    width = cross2(lo, hi)
    if width == 0 and vdot(lo, hi) > 0:
        return cross2(lo, u) == 0 and vdot(lo, u) > 0
    return cross2(lo, u) >= 0 and cross2(u, hi) >= 0


# ---------------------------------------------------------------------------
# Containment.
# ---------------------------------------------------------------------------


def contains(body: ConvexBody, x: Point) -> bool:
    """Exact closed containment: x in body."""
    _check_dim(body, x)
    if isinstance(body, Ball):
        return vnorm2(vsub(x.coords, body.center.coords)) <= body.radius * body.radius
    if body.dim == 2:
        return _hull2_contains(body.hull2(), x.coords)
    return _contains_lp(body, x)


def _contains_lp(body: VPolytope, x: Point) -> bool:
    """LP route: x = sum lambda_j v_j with lambda in the simplex."""
    verts = body.vertex_vecs()
    d = body.dim
    A = [[v[i] for v in verts] for i in range(d)]
    A.append([ONE] * len(verts))
    b = list(x.coords) + [ONE]
    return feasible_point(A, b) is not None


# ---------------------------------------------------------------------------
# Nearest-point projection.
# ---------------------------------------------------------------------------


class Projection(NamedTuple):
    point: Point
    sq_distance: Fraction


def project(body: ConvexBody, x: Point) -> Projection:
    """Nearest point of body to x and the squared distance.

    Exact rational for polytopes; floating point (tolerance TAU) for balls
    with x outside, exact (x itself) for x inside.
    """
    _check_dim(body, x)
    if isinstance(body, Ball):
        return _project_ball(body, x)
    if body.dim == 2:
        q, sq = _project_hull2(body.hull2(), x.coords)
    else:
        q, sq = _project_enum(body.vertex_vecs(), x.coords, body.dim)
    return Projection(Point(q), sq)


def _project_ball(body: Ball, x: Point) -> Projection:
    c = body.center.coords
    diff = vsub(x.coords, c)
    sq = vnorm2(diff)
    if sq <= body.radius * body.radius:
        return Projection(x, ZERO)
    dist = math.sqrt(float(sq))
    scale = float(body.radius) / dist
    q = tuple(Fraction(float(ci) + float(di) * scale) for ci, di in zip(c, diff))
    gap = dist - float(body.radius)
    return Projection(Point(q), Fraction(gap * gap))


def _project_hull2(hull: Sequence[Vec], x: Vec) -> tuple[Vec, Fraction]:
    if _hull2_contains(hull, x):
        return x, ZERO
    if len(hull) == 1:
        return hull[0], vnorm2(vsub(x, hull[0]))
    best: tuple[Vec, Fraction] | None = None
    n = len(hull)
    edges = [(hull[0], hull[1])] if n == 2 else [(hull[i], hull[(i + 1) % n]) for i in range(n)]
    for a, b in edges:
        q, sq = _project_segment(a, b, x)
        if best is None or sq < best[1]:
            best = (q, sq)
    return best


def _project_enum(vertices: Sequence[Vec], x: Vec, d: int) -> tuple[Vec, Fraction]:
    """Exact nearest point by affine least squares over vertex subsets.

    The minimizer lies in the relative interior of a face, hence in the
    convex hull of an affinely independent subset of at most d+1 vertices;
    projecting x onto that subset's affine hull recovers it, and keeping
    only candidates with nonnegative barycentric weights never admits a
    point outside the polytope.
    """
    uniq = sorted(set(vertices))
    best_q: Vec | None = None
    best_sq: Fraction | None = None
    for v in uniq:
        sq = vnorm2(vsub(x, v))
        if best_sq is None or sq < best_sq:
            best_q, best_sq = v, sq
    for k in range(2, min(len(uniq), d + 1) + 1):
        for S in itertools.combinations(uniq, k):
            s0 = S[0]
            D = [vsub(s, s0) for s in S[1:]]
            gamma = gram_solve(D, vsub(x, s0))
            if gamma is None:
                continue
            if any(g < 0 for g in gamma) or sum(gamma) > 1:
                continue
            q = s0
            for g, col in zip(gamma, D):
                q = vadd(q, vscale(col, g))
            sq = vnorm2(vsub(x, q))
            if sq < best_sq:
                best_q, best_sq = q, sq
    return best_q, best_sq


def sq_distance(body: ConvexBody, x: Point) -> Fraction:
    return project(body, x).sq_distance


def strictly_outside(body: ConvexBody, x: Point, tau: Fraction = TAU) -> bool:
    """x is outside body with positive clearance (tau-clearance for balls)."""
    _check_dim(body, x)
    if isinstance(body, Ball):
        reach = body.radius + tau
        return vnorm2(vsub(x.coords, body.center.coords)) > reach * reach
    return not contains(body, x)


# ---------------------------------------------------------------------------
# Ray intersection.
# ---------------------------------------------------------------------------


def ray_intersects(body: ConvexBody, p: Point, u: Direction) -> bool:
    """Exact: does {p + t u : t >= 0} meet the (closed) body?"""
    _check_dim(body, p)
    _check_dim(body, u)
    if isinstance(body, Ball):
        return _ray_ball(body, p.coords, u.vec)
    if body.dim == 2:
        hull = body.hull2()
        if _hull2_contains(hull, p.coords):
            return True
        lo, hi = _tangent_cone(hull, p.coords)
        return _cone_contains(lo, hi, u.vec)
    return _ray_lp(body, p, u)


def _ray_ball(body: Ball, p: Vec, u: Vec) -> bool:
    cp = vsub(body.center.coords, p)
    gap = vnorm2(cp) - body.radius * body.radius
    if gap <= 0:
        return True
    b = vdot(u, cp)
    if b <= 0:
        return False
    return b * b >= vnorm2(u) * gap


def _ray_lp(body: VPolytope, p: Point, u: Direction) -> bool:
    """LP route: p + t u = sum lambda_j v_j, t >= 0, lambda in the simplex."""
    verts = body.vertex_vecs()
    d = body.dim
    A = []
    for i in range(d):
        A.append([-u.vec[i]] + [v[i] for v in verts])
    A.append([ZERO] + [ONE] * len(verts))
    b = list(p.coords) + [ONE]
    return feasible_point(A, b) is not None


# ---------------------------------------------------------------------------
# Joint feasibility.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionResult:
    nonempty: bool
    mode: str  # "exact" | "approximate"
    witness: Point | None

    def __bool__(self) -> bool:
        return self.nonempty


def intersect_nonempty(
    bodies: Sequence[ConvexBody],
    tau: Fraction = TAU,
    max_cycles: int = 2000,
) -> IntersectionResult:
    """Do the bodies share a common point?

    Exact LP for all-polytope lists; alternating projections with tolerance
    tau when any ball is present (verdict flagged approximate).
    """
    if not bodies:
        raise ValueError("need at least one body")
    d = bodies[0].dim
    if any(b.dim != d for b in bodies):
        raise DimensionMismatch("bodies of mixed dimension")
    if len(bodies) == 1:
        return IntersectionResult(True, "exact", _anchor_point(bodies[0]))
    if all(isinstance(b, VPolytope) for b in bodies):
        return _intersect_polytopes_lp(bodies)
    return _intersect_alternating(bodies, float(tau), max_cycles)


def _intersect_polytopes_lp(bodies: Sequence[VPolytope]) -> IntersectionResult:
    """One simplex block per polytope, all blocks pinned to the same point."""
    d = bodies[0].dim
    blocks = [b.vertex_vecs() for b in bodies]
    offsets = [0]
    for verts in blocks:
        offsets.append(offsets[-1] + len(verts))
    ncols = offsets[-1]
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for k in range(1, len(blocks)):
        for i in range(d):
            row = [ZERO] * ncols
            for j, v in enumerate(blocks[0]):
                row[offsets[0] + j] = v[i]
            for j, v in enumerate(blocks[k]):
                row[offsets[k] + j] = -v[i]
            A.append(row)
            b.append(ZERO)
    for k in range(len(blocks)):
        row = [ZERO] * ncols
        for j in range(len(blocks[k])):
            row[offsets[k] + j] = ONE
        A.append(row)
        b.append(ONE)
    x = feasible_point(A, b)
    if x is None:
        return IntersectionResult(False, "exact", None)
    point = tuple(
        sum((x[offsets[0] + j] * v[i] for j, v in enumerate(blocks[0])), ZERO) for i in range(d)
    )
    return IntersectionResult(True, "exact", Point(point))


def _anchor_point(body: ConvexBody) -> Point:
    if isinstance(body, Ball):
        return body.center
    verts = body.vertex_vecs()
    n = Fraction(len(verts))
    centroid = tuple(sum((v[i] for v in verts), ZERO) / n for i in range(body.dim))
    return Point(centroid)


def project_float(body: ConvexBody, x: Sequence[float]) -> tuple[float, ...]:
    """Floating-point nearest point; used by iterative (approximate) routines."""
    if isinstance(body, Ball):
        c = vfloat(body.center.coords)
        diff = [xi - ci for xi, ci in zip(x, c)]
        dist = math.sqrt(sum(v * v for v in diff))
        r = float(body.radius)
        if dist <= r:
            return tuple(x)
        s = r / dist
        return tuple(ci + di * s for ci, di in zip(c, diff))
    if body.dim == 2:
        hull = [vfloat(v) for v in body.hull2()]
        q, _ = _project_polygon_float(hull, tuple(x))
        return q
    proj = project(body, Point(vec([Fraction(v) for v in x])))
    return proj.point.floats()


def _project_polygon_float(hull: list[tuple[float, ...]], x: tuple[float, ...]):
    if len(hull) == 1:
        q = hull[0]
        return q, (x[0] - q[0]) ** 2 + (x[1] - q[1]) ** 2
    inside = len(hull) >= 3
    n = len(hull)
    if inside:
        for i in range(n):
            a, b = hull[i], hull[(i + 1) % n]
            if (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < 0:
                inside = False
                break
    if inside:
        return x, 0.0
    best = None
    edges = [(hull[0], hull[1])] if n == 2 else [(hull[i], hull[(i + 1) % n]) for i in range(n)]
    for a, b in edges:
        ab = (b[0] - a[0], b[1] - a[1])
        nn = ab[0] * ab[0] + ab[1] * ab[1]
        t = 0.0 if nn == 0 else max(0.0, min(1.0, ((x[0] - a[0]) * ab[0] + (x[1] - a[1]) * ab[1]) / nn))
        q = (a[0] + t * ab[0], a[1] + t * ab[1])
        sq = (x[0] - q[0]) ** 2 + (x[1] - q[1]) ** 2
        if best is None or sq < best[1]:
            best = (q, sq)
    return best


def _intersect_alternating(
    bodies: Sequence[ConvexBody], tau: float, max_cycles: int
) -> IntersectionResult:
    anchors = [_anchor_point(b).floats() for b in bodies]
    d = bodies[0].dim
    x = tuple(sum(a[i] for a in anchors) / len(anchors) for i in range(d))
    for _ in range(max_cycles):
        for body in bodies:
            x = project_float(body, x)
        residual = 0.0
        for body in bodies:
            q = project_float(body, x)
            residual = max(residual, math.dist(q, x))
        if residual <= tau:
            witness = Point(tuple(rationalize(v, 10**12) for v in x))
            return IntersectionResult(True, "approximate", witness)
    return IntersectionResult(False, "approximate", None)


def bounding_box(bodies: Sequence[ConvexBody]) -> tuple[Vec, Vec]:
    """Componentwise rational (lo, hi) box containing every body."""
    if not bodies:
        raise ValueError("need at least one body")
    d = bodies[0].dim
    lo = [None] * d
    hi = [None] * d
    for body in bodies:
        if isinstance(body, Ball):
            pts = [
                tuple(c + (body.radius if i == j else ZERO) for j, c in enumerate(body.center.coords))
                for i in range(d)
            ] + [
                tuple(c - (body.radius if i == j else ZERO) for j, c in enumerate(body.center.coords))
                for i in range(d)
            ]
        else:
            pts = body.vertex_vecs()
        for ptc in pts:
            for i in range(d):
                if lo[i] is None or ptc[i] < lo[i]:
                    lo[i] = ptc[i]
                if hi[i] is None or ptc[i] > hi[i]:
                    hi[i] = ptc[i]
    return tuple(lo), tuple(hi)
