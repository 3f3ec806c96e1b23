"""Exact rational scalars, small vectors, and dense linear algebra helpers.

Everything that claims exactness elsewhere in the package bottoms out in
Fraction arithmetic on tuples.  Vectors are plain tuples of Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value) -> Fraction:
    """Coerce ints, decimal/ratio strings, floats, and Fractions to Fraction.

    Floats convert exactly (binary value), so callers that care about clean
    denominators should pass strings or Fractions.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def vec(values: Iterable) -> Vec:
    return tuple(frac(v) for v in values)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(a: Vec, s: Fraction) -> Vec:
    return tuple(x * s for x in a)


def vdot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def vnorm2(a: Vec) -> Fraction:
    return vdot(a, a)


def cross2(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def vfloat(a: Sequence[Fraction]) -> tuple[float, ...]:
    return tuple(float(x) for x in a)


def clear_denominators(a: Vec) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    denom = 1
    for x in a:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in a]
    g = 0
    for v in ints:
        g = _gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rationalize(x: float, denominator: int = 10**9) -> Fraction:
    """Deterministic rational rounding of a float to a fixed denominator."""
    return Fraction(round(x * denominator), denominator)


# ---------------------------------------------------------------------------
# Dense exact linear algebra (desk-scale matrices).
# ---------------------------------------------------------------------------


def gauss_solve(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vec | None:
    """One exact solution of A x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(row) + [rhs] for row, rhs in zip(A, b, strict=True)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pr = next((i for i in range(row, m) if M[i][col] != 0), None)
        if pr is None:
            continue
        M[row], M[pr] = M[pr], M[row]
        inv = ONE / M[row][col]
        M[row] = [v * inv for v in M[row]]
        for i in range(m):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [v - f * w for v, w in zip(M[i], M[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if M[i][n] != 0:
            return None
    x = [ZERO] * n
    for r, c in pivots:
        x[c] = M[r][n]
    return tuple(x)


def matrix_rank(A: Sequence[Sequence[Fraction]]) -> int:
    m = len(A)
    if m == 0:
        return 0
    n = len(A[0])
    M = [list(row) for row in A]
    rank = 0
    for col in range(n):
        pr = next((i for i in range(rank, m) if M[i][col] != 0), None)
        if pr is None:
            continue
        M[rank], M[pr] = M[pr], M[rank]
        inv = ONE / M[rank][col]
        M[rank] = [v * inv for v in M[rank]]
        for i in range(m):
            if i != rank and M[i][col] != 0:
                f = M[i][col]
                M[i] = [v - f * w for v, w in zip(M[i], M[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def gram_solve(D: Sequence[Vec], rhs: Vec) -> Vec | None:
    """Solve (D^T D) g = D^T rhs for column vectors D; None if D is rank-deficient.

    D is given as a list of columns.  Used for exact affine least squares.
    """
    k = len(D)
    G = [[vdot(D[i], D[j]) for j in range(k)] for i in range(k)]
    t = tuple(vdot(D[i], rhs) for i in range(k))
    if matrix_rank(G) < k:
        return None
    return gauss_solve(G, t)
