"""How rays from a point interact with a family of bodies.

Covering multiplicity (max bodies through one point), per-direction hit
counts, shadow arcs in the plane, and the minimum number of missed bodies
over all ray directions -- exact in d = 2 via an arc-endpoint sweep
evaluated with exact ray predicates, sampled (honestly flagged) in d >= 3.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import (
    Ball,
    ConvexBody,
    DimensionMismatch,
    Direction,
    Point,
    VPolytope,
    _tangent_cone,
    contains,
    intersect_nonempty,
    project,
    ray_intersects,
)
from .rationals import (
    ZERO,
    Vec,
    clear_denominators,
    cross2,
    frac,
    vdot,
    vnorm2,
    vsub,
)

TWO_PI = 2 * math.pi


class DeskScaleError(ValueError):
    """Raised when an input exceeds the documented desk-scale caps."""


@dataclass(frozen=True)
class Family:
    bodies: tuple[ConvexBody, ...]
    labels: tuple[str, ...] | None = None
    dim: int = 0

    def __post_init__(self):
        if not self.bodies:
            raise ValueError("family must be nonempty")
        d = self.bodies[0].dim
        if any(b.dim != d for b in self.bodies):
            raise DimensionMismatch("family bodies of mixed dimension")
        if self.labels is not None:
            if len(self.labels) != len(self.bodies):
                raise ValueError("one label per body")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("labels must be unique")
        object.__setattr__(self, "dim", d)

    @classmethod
    def of(cls, bodies: Sequence[ConvexBody], labels: Sequence[str] | None = None) -> "Family":
        return cls(tuple(bodies), tuple(labels) if labels is not None else None)

    def __len__(self) -> int:
        return len(self.bodies)


@dataclass(frozen=True)
class Arc:
    """Closed angular interval [start, start + width] of hitting directions."""

    start: float  # radians in [-pi, pi)
    width: float  # in [0, 2*pi]
    body_index: int

    @property
    def full(self) -> bool:
        return self.width >= TWO_PI

    def contains_angle(self, theta: float, tol: float = 0.0) -> bool:
        if self.full:
            return True
        off = (theta - self.start) % TWO_PI
        return off <= self.width + tol or off >= TWO_PI - tol


@dataclass(frozen=True)
class CoveringMultiplicity:
    c: int
    mode: str  # "exact" | "approximate"
    witness: Point | None


@dataclass(frozen=True)
class MinMissed:
    m: int
    worst_direction: Direction
    mode: str  # "exact" | "sampled"


MAX_COVERING_BODIES = 16


def covering_multiplicity(family: Family) -> CoveringMultiplicity:
    """Largest number of family members sharing a point.

    Exact (descending subset LPs pruned by the pairwise intersection graph)
    for all-polytope families; approximate, flagged, when balls are present.
    """
    n = len(family)
    if n > MAX_COVERING_BODIES:
        raise DeskScaleError(
            f"covering multiplicity is exponential in n; cap is {MAX_COVERING_BODIES}, got {n}"
        )
    mode = "exact" if all(isinstance(b, VPolytope) for b in family.bodies) else "approximate"
    pair_ok = [[True] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        ok = intersect_nonempty([family.bodies[i], family.bodies[j]]).nonempty
        pair_ok[i][j] = pair_ok[j][i] = ok
    for m in range(n, 0, -1):
        for S in itertools.combinations(range(n), m):
            if any(not pair_ok[i][j] for i, j in itertools.combinations(S, 2)):
                continue
            res = intersect_nonempty([family.bodies[i] for i in S])
            if res.nonempty:
                return CoveringMultiplicity(m, mode, res.witness)
    raise AssertionError("unreachable: single bodies are nonempty")


def hit_count(p: Point, u: Direction, family: Family) -> int:
    return sum(1 for b in family.bodies if ray_intersects(b, p, u))


# ---------------------------------------------------------------------------
# Fast per-direction hit testers (exact, cleared-denominator integers).
# ---------------------------------------------------------------------------


class RayHitTester:
    """Exact hit tests for many directions from a fixed source point.

    Precomputes, per body, either the tangent cone (planar polytope with the
    source strictly outside) or the cleared-denominator ball quadratic, so a
    single direction query costs a handful of integer operations.  Agrees
    with ray_intersects by construction (property-tested).
    """

    def __init__(self, body: ConvexBody, p: Point):
        self.body = body
        self.p = p
        self.always = False
        self.kind = "generic"
        if isinstance(body, Ball):
            cp = vsub(body.center.coords, p.coords)
            gap = vnorm2(cp) - body.radius * body.radius
            if gap <= 0:
                self.always = True
                return
            denom = body.radius.denominator
            for c in cp:
                denom = denom * c.denominator // math.gcd(denom, c.denominator)
            N = tuple(int(c * denom) for c in cp)
            R = int(body.radius * denom)
            self.kind = "ball"
            self.N = N
            self.gap_int = sum(v * v for v in N) - R * R  # > 0 since p outside
        elif body.dim == 2:
            hull = body.hull2()
            from .geometry import _hull2_contains

            if _hull2_contains(hull, p.coords):
                self.always = True
                return
            lo, hi = _tangent_cone(hull, p.coords)
            self.kind = "cone"
            self.lo = clear_denominators(lo)
            self.hi = clear_denominators(hi)
            self.degenerate = (
                self.lo[0] * self.hi[1] - self.lo[1] * self.hi[0] == 0
                and self.lo[0] * self.hi[0] + self.lo[1] * self.hi[1] > 0
            )
        else:
            if contains(body, p):
                self.always = True

    def hits(self, u: Sequence) -> bool:
        if self.always:
            return True
        if self.kind == "cone":
            lo, hi = self.lo, self.hi
            c1 = lo[0] * u[1] - lo[1] * u[0]
            if self.degenerate:
                return c1 == 0 and lo[0] * u[0] + lo[1] * u[1] > 0
            if c1 < 0:
                return False
            return u[0] * hi[1] - u[1] * hi[0] >= 0
        if self.kind == "ball":
            N = self.N
            b = sum(ui * ni for ui, ni in zip(u, N))
            if b <= 0:
                return False
            return b * b >= sum(ui * ui for ui in u) * self.gap_int
        return ray_intersects(self.body, self.p, Direction(tuple(frac(v) for v in u)))


def hit_counts_bulk(p: Point, family: Family, directions: Sequence[Sequence[int]]) -> list[int]:
    """Exact hit counts for many integer directions from p (oracle helper)."""
    testers = [RayHitTester(b, p) for b in family.bodies]
    base = sum(1 for t in testers if t.always)
    active = [t for t in testers if not t.always]
    return [base + sum(1 for t in active if t.hits(u)) for u in directions]


# ---------------------------------------------------------------------------
# Shadow arcs (d = 2).
# ---------------------------------------------------------------------------


def shadow_arcs(p: Point, family: Family) -> list[Arc]:
    """For each body, the closed arc of ray angles from p that hit it.

    Bodies containing p contribute the full circle.  Ball arc endpoints are
    floating point (asin/atan2); polytope endpoints come from exact tangent
    vertices converted to angles.
    """
    if family.dim != 2:
        raise DimensionMismatch("shadow arcs are planar (d = 2) only")
    if p.dim != 2:
        raise DimensionMismatch("point dimension must be 2")
    arcs: list[Arc] = []
    for idx, body in enumerate(family.bodies):
        if contains(body, p):
            arcs.append(Arc(-math.pi, TWO_PI, idx))
            continue
        if isinstance(body, Ball):
            c = vsub(body.center.coords, p.coords)
            dist = math.sqrt(float(vnorm2(c)))
            half = math.asin(min(1.0, float(body.radius) / dist))
            center = math.atan2(float(c[1]), float(c[0]))
            start = _wrap(center - half)
            arcs.append(Arc(start, 2 * half, idx))
        else:
            lo, hi = _tangent_cone(body.hull2(), p.coords)
            a0 = math.atan2(float(lo[1]), float(lo[0]))
            width = math.atan2(float(cross2(lo, hi)), float(vdot(lo, hi)))
            if width < 0:
                width = 0.0
            arcs.append(Arc(_wrap(a0), width, idx))
    return arcs


def _wrap(theta: float) -> float:
    out = (theta + math.pi) % TWO_PI - math.pi
    return out if out < math.pi else -math.pi


# ---------------------------------------------------------------------------
# Minimum missed count over all ray directions.
# ---------------------------------------------------------------------------


def min_missed(p: Point, family: Family, resolution: int | None = None) -> MinMissed:
    """min over directions u of (number of bodies the ray from p misses).

    d = 2: exact sweep over arc endpoints and elementary-arc midpoints, all
    candidates evaluated with exact ray predicates.  d >= 3: sampled over
    quasi-uniform directions plus the projection directions (mode
    "sampled", an upper bound on the true minimum).
    """
    n = len(family)
    if family.dim == 2:
        return _min_missed_exact_2d(p, family, n)
    if resolution is None:
        raise ValueError("resolution is required for d >= 3 (sampled mode)")
    return _min_missed_sampled(p, family, n, resolution)


def _candidate_directions_2d(p: Point, family: Family) -> list[tuple[tuple[int, int], bool]]:
    """(integer direction, is_midpoint) candidates covering every elementary arc."""
    endpoint_dirs: list[tuple[int, int]] = []
    angles: list[float] = []
    for body in family.bodies:
        if contains(body, p):
            continue
        if isinstance(body, Ball):
            c = vsub(body.center.coords, p.coords)
            dist = math.sqrt(float(vnorm2(c)))
            half = math.asin(min(1.0, float(body.radius) / dist))
            center = math.atan2(float(c[1]), float(c[0]))
            for theta in (center - half, center + half):
                endpoint_dirs.append(_angle_dir(theta))
                angles.append(_wrap(theta))
        else:
            lo, hi = _tangent_cone(body.hull2(), p.coords)
            for w in (lo, hi):
                iw = clear_denominators(w)
                endpoint_dirs.append((iw[0], iw[1]))
                angles.append(math.atan2(float(w[1]), float(w[0])))
    if not endpoint_dirs:
        return [((1, 0), True)]
    order = sorted(range(len(angles)), key=lambda i: angles[i])
    cands: list[tuple[tuple[int, int], bool]] = []
    sorted_angles = [angles[i] for i in order]
    k = len(sorted_angles)
    for j in range(k):
        a = sorted_angles[j]
        b = sorted_angles[(j + 1) % k] + (TWO_PI if j == k - 1 else 0.0)
        cands.append((_angle_dir((a + b) / 2), True))
    for i in order:
        cands.append((endpoint_dirs[i], False))
    return cands


def _angle_dir(theta: float, scale: int = 10**7) -> tuple[int, int]:
    return (round(math.cos(theta) * scale), round(math.sin(theta) * scale))


def _min_missed_exact_2d(p: Point, family: Family, n: int) -> MinMissed:
    testers = [RayHitTester(b, p) for b in family.bodies]
    base = sum(1 for t in testers if t.always)
    active = [t for t in testers if not t.always]
    best: tuple[int, int, int] | None = None  # (missed, not-midpoint, order)
    best_dir: tuple[int, int] | None = None
    for order, (u, is_mid) in enumerate(_candidate_directions_2d(p, family)):
        hits = base + sum(1 for t in active if t.hits(u))
        key = (n - hits, 0 if is_mid else 1, order)
        if best is None or key < best:
            best = key
            best_dir = u
    return MinMissed(best[0], Direction.of(*best_dir), "exact")


def sphere_directions(dim: int, count: int) -> list[tuple[int, ...]]:
    """Deterministic quasi-uniform integer directions on the (dim-1)-sphere."""
    scale = 10**6
    out: list[tuple[int, ...]] = []
    if dim == 2:
        for i in range(count):
            theta = TWO_PI * i / count
            out.append((round(math.cos(theta) * scale), round(math.sin(theta) * scale)))
        return out
    if dim == 3:
        golden = (1 + math.sqrt(5)) / 2
        for i in range(count):
            z = 1 - 2 * (i + 0.5) / count
            r = math.sqrt(max(0.0, 1 - z * z))
            theta = TWO_PI * i / golden
            out.append(
                (
                    round(r * math.cos(theta) * scale),
                    round(r * math.sin(theta) * scale),
                    round(z * scale),
                )
            )
        return out
    import random as _random

    rng = _random.Random(0)
    while len(out) < count:
        v = tuple(rng.gauss(0, 1) for _ in range(dim))
        norm = math.sqrt(sum(x * x for x in v))
        if norm < 1e-9:
            continue
        out.append(tuple(round(x / norm * scale) for x in v))
    return out


def _min_missed_sampled(p: Point, family: Family, n: int, resolution: int) -> MinMissed:
    dirs: list[tuple] = list(sphere_directions(family.dim, resolution))
    for body in family.bodies:
        w = vsub(project(body, p).point.coords, p.coords)
        if any(x != 0 for x in w):
            dirs.append(tuple(w))
            dirs.append(tuple(-x for x in w))
    best_missed = None
    best_dir = None
    for u in dirs:
        ud = Direction(tuple(frac(x) for x in u))
        missed = n - hit_count(p, ud, family)
        if best_missed is None or missed < best_missed:
            best_missed = missed
            best_dir = ud
    return MinMissed(best_missed, best_dir, "sampled")
