"""Small dense exact linear programming over the rationals.

Two-phase tableau simplex with Bland's rule (anti-cycling), Fraction
arithmetic throughout.  Every exactness claim downstream funnels through
here: convex-combination feasibility, the Gordan pair behind escape
certificates, strict margin programs for arrangement cells, and
recession-cone interior tests.  Problem sizes are desk scale (tens of rows
and columns), so a dense tableau is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .rationals import ONE, ZERO, Vec, frac


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None


def solve(
    c: Sequence,
    A: Sequence[Sequence],
    b: Sequence,
    maximize: bool = False,
) -> LPResult:
    """Optimize c.x subject to A x = b, x >= 0 (standard form).

    Returns OPTIMAL with a basic solution, INFEASIBLE, or UNBOUNDED.
    """
    m = len(A)
    n = len(c)
    cost = [frac(v) for v in c]
    if maximize:
        cost = [-v for v in cost]
    rows: list[list[Fraction]] = []
    for i in range(m):
        row = [frac(v) for v in A[i]]
        rhs = frac(b[i])
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [rhs])

    # Phase 1: artificial basis, minimize the sum of artificials.
    T = [rows[i][:n] + _unit(m, i) + [rows[i][n]] for i in range(m)]
    basis = [n + i for i in range(m)]
    z = [ZERO] * (n + m) + [ZERO]
    for i in range(m):
        for j in range(n):
            z[j] -= T[i][j]
        z[n + m] -= T[i][n + m]
    T.append(z)
    _iterate(T, basis, n + m)
    if -T[m][n + m] > 0:
        return LPResult(LPStatus.INFEASIBLE)

    # Drive leftover artificials out of the basis; drop redundant rows.
    drop: list[int] = []
    for i in range(m):
        if basis[i] >= n:
            pc = next((j for j in range(n) if T[i][j] != 0), None)
            if pc is None:
                drop.append(i)
            else:
                _pivot(T, basis, i, pc)
    keep = [i for i in range(m) if i not in drop]
    T2 = [[T[i][j] for j in range(n)] + [T[i][n + m]] for i in keep]
    basis2 = [basis[i] for i in keep]

    # Phase 2 cost row in terms of the current basis.
    z2 = cost[:] + [ZERO]
    for i, bi in enumerate(basis2):
        f = z2[bi]
        if f != 0:
            z2 = [v - f * w for v, w in zip(z2, T2[i])]
    T2.append(z2)
    status = _iterate(T2, basis2, n)
    if status is LPStatus.UNBOUNDED:
        return LPResult(LPStatus.UNBOUNDED)
    x = [ZERO] * n
    for i, bi in enumerate(basis2):
        x[bi] = T2[i][n]
    obj = -T2[len(basis2)][n]
    if maximize:
        obj = -obj
    return LPResult(LPStatus.OPTIMAL, tuple(x), obj)


def _unit(m: int, i: int) -> list[Fraction]:
    row = [ZERO] * m
    row[i] = ONE
    return row


def _pivot(T: list[list[Fraction]], basis: list[int], pr: int, pc: int) -> None:
    piv = T[pr][pc]
    T[pr] = [v / piv for v in T[pr]]
    prow = T[pr]
    for i in range(len(T)):
        if i != pr and T[i][pc] != 0:
            f = T[i][pc]
            T[i] = [v - f * w for v, w in zip(T[i], prow)]
    basis[pr] = pc


def _iterate(T: list[list[Fraction]], basis: list[int], ncols: int) -> LPStatus:
    """Bland's rule: lowest-index entering column, lowest-index leaving basic."""
    m = len(T) - 1
    zrow = m
    while True:
        pc = next((j for j in range(ncols) if T[zrow][j] < 0), None)
        if pc is None:
            return LPStatus.OPTIMAL
        pr = None
        best: Fraction | None = None
        for i in range(m):
            aij = T[i][pc]
            if aij > 0:
                ratio = T[i][-1] / aij
                if best is None or ratio < best or (ratio == best and basis[i] < basis[pr]):
                    best = ratio
                    pr = i
        if pr is None:
            return LPStatus.UNBOUNDED
        _pivot(T, basis, pr, pc)


# ---------------------------------------------------------------------------
# Feasibility and convex-hull helpers.
# ---------------------------------------------------------------------------


def feasible_point(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Some x >= 0 with A x = b, or None."""
    n = len(A[0]) if A else 0
    res = solve([ZERO] * n, A, b)
    return res.x if res.status is LPStatus.OPTIMAL else None


def origin_in_hull(vectors: Sequence[Vec]) -> tuple[Fraction, ...] | None:
    """Convex coefficients mu >= 0, sum mu = 1, sum mu_i v_i = 0; None if 0 is outside."""
    k = len(vectors)
    if k == 0:
        return None
    d = len(vectors[0])
    A = [[vectors[j][i] for j in range(k)] for i in range(d)]
    A.append([ONE] * k)
    b = [ZERO] * d + [ONE]
    return feasible_point(A, b)


def positive_direction(vectors: Sequence[Vec]) -> Vec | None:
    """A direction u with v . u >= 1 for every v, or None.

    By Gordan's theorem exactly one of origin_in_hull / positive_direction
    succeeds on a finite nonzero vector set.
    """
    k = len(vectors)
    if k == 0:
        return None
    d = len(vectors[0])
    # u = up - um, slack s_v >= 0:  v.up - v.um - s_v = 1
    A = []
    for idx, v in enumerate(vectors):
        row = list(v) + [-x for x in v] + [ZERO] * k
        row[2 * d + idx] = -ONE
        A.append(row)
    b = [ONE] * k
    x = feasible_point(A, b)
    if x is None:
        return None
    return tuple(x[i] - x[d + i] for i in range(d))


def max_margin(
    rows: Sequence[Vec],
    rhs: Sequence[Fraction],
    cap: Fraction = ONE,
) -> tuple[Fraction, Vec] | None:
    """Maximize t subject to rows_i . x - rhs_i >= t and t <= cap (x free, t free).

    Returns (t*, x*) or None when even the weak system (t unrestricted
    below) is infeasible -- which cannot happen for finite data, since t
    may go to -infinity; callers interpret t* > 0 as strict feasibility.
    """
    m = len(rows)
    d = len(rows[0])
    # vars: xp(d), xm(d), tp, tm, slack per row, slack for cap
    ncols = 2 * d + 2 + m + 1
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for i, row in enumerate(rows):
        line = [ZERO] * ncols
        for j in range(d):
            line[j] = row[j]
            line[d + j] = -row[j]
        line[2 * d] = -ONE
        line[2 * d + 1] = ONE
        line[2 * d + 2 + i] = -ONE
        A.append(line)
        b.append(frac(rhs[i]))
    capline = [ZERO] * ncols
    capline[2 * d] = ONE
    capline[2 * d + 1] = -ONE
    capline[2 * d + 2 + m] = ONE
    A.append(capline)
    b.append(frac(cap))
    c = [ZERO] * ncols
    c[2 * d] = ONE
    c[2 * d + 1] = -ONE
    res = solve(c, A, b, maximize=True)
    if res.status is not LPStatus.OPTIMAL:
        return None
    x = tuple(res.x[j] - res.x[d + j] for j in range(d))
    return res.objective, x


def extreme_value(
    direction: Vec,
    rows: Sequence[Vec],
    rhs: Sequence[Fraction],
) -> Fraction | None:
    """sup direction . x over {x : rows_i . x >= rhs_i}; None when unbounded."""
    m = len(rows)
    d = len(direction)
    ncols = 2 * d + m
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for i, row in enumerate(rows):
        line = [ZERO] * ncols
        for j in range(d):
            line[j] = row[j]
            line[d + j] = -row[j]
        line[2 * d + i] = -ONE
        A.append(line)
        b.append(frac(rhs[i]))
    c = [ZERO] * ncols
    for j in range(d):
        c[j] = direction[j]
        c[d + j] = -direction[j]
    res = solve(c, A, b, maximize=True)
    if res.status is LPStatus.UNBOUNDED:
        return None
    if res.status is LPStatus.INFEASIBLE:
        raise ValueError("extreme_value called on an infeasible system")
    return res.objective
