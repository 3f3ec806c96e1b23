"""Exact verification of ray-escape witnesses.

A subfamily escape certificate pins a point p strictly outside every member
together with convex coefficients expressing 0 as a combination of the
projection offsets pi_K(p) - p.  By Gordan duality no direction then has
positive dot product with every offset, and the variational inequality of
nearest-point projections turns a nonpositive dot product into a guaranteed
miss, so every ray from p misses at least one member.  Verification always
recomputes projections from the raw bodies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .coverage import Family, min_missed
from .geometry import (
    Ball,
    ConvexBody,
    DimensionMismatch,
    Direction,
    Point,
    TAU,
    VPolytope,
    project,
    strictly_outside,
)
from .lp import origin_in_hull, positive_direction
from .rationals import Vec, vsub, vfloat


@dataclass(frozen=True)
class SubfamilyEscapeCertificate:
    p: Point
    member_indices: tuple[int, ...]
    projections: tuple[Point, ...]
    hull_coefficients: tuple[Fraction, ...]
    mode: str  # "exact" | "approximate"
    margin: float | None = None  # least singular value of the hull system (approximate mode)

    ok = True


@dataclass(frozen=True)
class EscapeFailure:
    reason: str  # "member-contains-point" | "origin-not-in-hull"
    failing_index: int | None = None
    separating: Direction | None = None

    ok = False


@dataclass(frozen=True)
class TverbergRayCertificate:
    p: Point
    subfamilies: tuple[SubfamilyEscapeCertificate, ...]


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    checks: tuple[CheckItem, ...]

    def failed_names(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def check_escape(
    p: Point,
    members: Sequence[ConvexBody],
    indices: Sequence[int] | None = None,
    tau: Fraction = TAU,
) -> SubfamilyEscapeCertificate | EscapeFailure:
    """Certify that every ray from p misses at least one member.

    Succeeds iff (a) p is strictly outside each member and (b) the origin
    lies in the convex hull of the projection offsets.  On failure reports
    which condition broke; for (b) it returns a separating direction.
    """
    if not members:
        raise ValueError("escape check needs at least one member")
    if indices is None:
        indices = tuple(range(len(members)))
    else:
        indices = tuple(indices)
        if len(indices) != len(members):
            raise ValueError("one index per member")
    for idx, body in zip(indices, members):
        if body.dim != p.dim:
            raise DimensionMismatch("member dimension differs from point dimension")
        if not strictly_outside(body, p, tau):
            return EscapeFailure("member-contains-point", failing_index=idx)
    projections = tuple(project(body, p).point for body in members)
    offsets = [vsub(pr.coords, p.coords) for pr in projections]
    mu = origin_in_hull(offsets)
    if mu is None:
        u = positive_direction(offsets)
        return EscapeFailure(
            "origin-not-in-hull",
            separating=Direction(u) if u is not None else None,
        )
    exact = all(isinstance(b, VPolytope) for b in members)
    margin = None if exact else _hull_margin(offsets)
    return SubfamilyEscapeCertificate(
        p=p,
        member_indices=indices,
        projections=projections,
        hull_coefficients=tuple(mu),
        mode="exact" if exact else "approximate",
        margin=margin,
    )


def _hull_margin(offsets: Sequence[Vec]) -> float:
    m = np.array([vfloat(o) for o in offsets], dtype=float).T
    system = np.vstack([m, np.ones((1, m.shape[1]))])
    return float(np.linalg.svd(system, compute_uv=False)[-1])


def coefficients_certify(cert: SubfamilyEscapeCertificate) -> bool:
    """Pure-arithmetic self-check of the stored hull coefficients."""
    mu = cert.hull_coefficients
    if len(mu) != len(cert.projections):
        return False
    if any(m < 0 for m in mu) or sum(mu) != 1:
        return False
    d = cert.p.dim
    residual = [Fraction(0)] * d
    for m, pr in zip(mu, cert.projections):
        off = vsub(pr.coords, cert.p.coords)
        for i in range(d):
            residual[i] += m * off[i]
    if cert.mode == "exact":
        return all(v == 0 for v in residual)
    return all(abs(float(v)) <= 1e-6 for v in residual)


def check_theorem1(cert: TverbergRayCertificate, family: Family, r: int) -> CheckReport:
    """Full verification of a ray-partition certificate against raw bodies."""
    checks: list[CheckItem] = []
    n = len(family)
    checks.append(
        CheckItem(
            "subfamily-count",
            len(cert.subfamilies) == r,
            f"expected {r}, got {len(cert.subfamilies)}",
        )
    )
    all_idx: list[int] = []
    for sub in cert.subfamilies:
        all_idx.extend(sub.member_indices)
    valid = all(0 <= i < n for i in all_idx) and all(
        len(sub.member_indices) > 0 for sub in cert.subfamilies
    )
    checks.append(CheckItem("indices-valid", valid, f"indices {sorted(all_idx)}"))
    checks.append(
        CheckItem("indices-disjoint", len(set(all_idx)) == len(all_idx), "")
    )
    same_p = all(sub.p == cert.p for sub in cert.subfamilies)
    checks.append(CheckItem("same-point", same_p, ""))
    if valid:
        for j, sub in enumerate(cert.subfamilies):
            members = [family.bodies[i] for i in sub.member_indices]
            res = check_escape(cert.p, members, indices=sub.member_indices)
            detail = "" if res.ok else f"failure: {res.reason}"
            checks.append(CheckItem(f"escape-{j}", res.ok, detail))
            checks.append(
                CheckItem(f"coefficients-{j}", coefficients_certify(sub), "stored weights")
            )
    return CheckReport(all(c.passed for c in checks), tuple(checks))


def check_corollary(
    p: Point,
    family: Family,
    r: int,
    method: str = "exact2d",
    subfamilies: Sequence[Sequence[int]] | None = None,
) -> CheckReport:
    """Does every ray from p miss at least r family members?

    method="exact2d": exact planar arc sweep (d = 2 only).
    method="certificate": sufficient condition -- r disjoint escape
    subfamilies among the provided candidate index sets.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    checks: list[CheckItem] = []
    if method == "exact2d":
        if family.dim != 2:
            raise DimensionMismatch("exact2d verification needs a planar family")
        mm = min_missed(p, family)
        checks.append(
            CheckItem(
                "min-missed",
                mm.m >= r,
                f"min missed {mm.m} vs required {r}",
            )
        )
        return CheckReport(all(c.passed for c in checks), tuple(checks))
    if method != "certificate":
        raise ValueError(f"unknown method {method!r}")
    if subfamilies is None:
        raise ValueError("certificate method needs candidate subfamilies")
    passing: list[tuple[int, frozenset[int]]] = []
    for j, idxs in enumerate(subfamilies):
        members = [family.bodies[i] for i in idxs]
        res = check_escape(p, members, indices=idxs)
        checks.append(
            CheckItem(f"candidate-{j}", res.ok, "" if res.ok else f"failure: {res.reason}")
        )
        if res.ok:
            passing.append((j, frozenset(idxs)))
    found = _find_disjoint(passing, r)
    checks.append(
        CheckItem(
            "disjoint-escapes",
            found is not None,
            f"need {r} disjoint passing subfamilies among {len(passing)}",
        )
    )
    return CheckReport(found is not None, tuple(checks))


def _find_disjoint(candidates: Sequence[tuple[int, frozenset[int]]], r: int):
    """First r pairwise-disjoint candidate sets, by depth-first search."""

    def extend(start: int, chosen: list[int], used: frozenset[int]):
        if len(chosen) == r:
            return list(chosen)
        for k in range(start, len(candidates)):
            j, s = candidates[k]
            if used & s:
                continue
            out = extend(k + 1, chosen + [j], used | s)
            if out is not None:
                return out
        return None

    return extend(0, [], frozenset())
