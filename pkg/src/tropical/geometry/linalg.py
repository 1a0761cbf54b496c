"""Small exact linear algebra over integers and rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def det(rows: Sequence[Sequence]) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination (exact for ints)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    m = [list(r) for r in rows]
    if any(isinstance(x, Fraction) for r in m for x in r):
        return _det_fraction(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_fraction(m: list[list]) -> Fraction:
    n = len(m)
    m = [[Fraction(x) for x in r] for r in m]
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            out = -out
        out *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return out


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (-1 for the empty set)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of a square or overdetermined consistent system.

    Returns ``None`` when the system is inconsistent or underdetermined.
    """
    n = len(A[0])
    rows = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b_ for a, b_ in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if r < n:
        return None
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def hyperplane_through(points: Sequence[Sequence[int]]) -> tuple[list, object] | None:
    """Normal ``n`` and offset ``c`` with ``n . p = c`` for all given points.

    Needs ``k`` points spanning a hyperplane in ``R^k``; the normal has
    entries given by signed maximal minors, so integer input yields an
    integer normal (not reduced).  Returns ``None`` if the points are
    affinely dependent.
    """
    p0 = points[0]
    k = len(p0)
    vecs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    normal = []
    for j in range(k):
        minor = [[v[i] for i in range(k) if i != j] for v in vecs]
        d = det(minor)
        normal.append(-d if j % 2 else d)
    if all(x == 0 for x in normal):
        return None
    return normal, sum(a * b for a, b in zip(normal, p0))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def integer_vector(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector."""
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def affine_coordinates(basis: Sequence[Sequence], q: Sequence) -> list[Fraction] | None:
    """Barycentric coordinates of ``q`` with respect to affinely independent ``basis``."""
    k = len(basis)
    dim = len(q)
    if k == dim + 1:
        # Cramer's rule on the homogenised simplex
        rows = [list(p) + [1] for p in basis]
        D = det(rows)
        if D == 0:
            return None
        out = []
        for j in range(k):
            saved = rows[j]
            rows[j] = list(q) + [1]
            out.append(Fraction(det(rows)) / D)
            rows[j] = saved
        return out
    A = [[Fraction(basis[j][i]) for j in range(k)] for i in range(dim)]
    A.append([Fraction(1)] * k)
    b = [Fraction(x) for x in q] + [Fraction(1)]
    return solve(A, b)


def affine_basis(points: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal affinely independent subset (greedy, in order)."""
    if not points:
        return []
    chosen = [0]
    for i in range(1, len(points)):
        cand = [points[j] for j in chosen] + [points[i]]
        if affine_rank(cand) == len(cand) - 1:
            chosen.append(i)
    return chosen
