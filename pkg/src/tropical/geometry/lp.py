"""Exact rational linear programming (dense two-phase simplex, Bland's rule).

Problem form::

    maximize    c . x
    subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0

Sizes in this library stay in the tens of rows and columns, so a dense
tableau of ``Fraction`` entries is adequate.  Bland's rule guarantees
termination on the heavily degenerate programs produced by regularity
checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    objective: Fraction | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = T[r]
    pv = row[c]
    if pv != 1:
        inv = 1 / pv
        T[r] = row = [v * inv for v in row]
    nz = [j for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[c]
        if f:
            for j in nz:
                other[j] -= f * row[j]
    basis[r] = c


def _run(T: list[list[Fraction]], basis: list[int], ncols: int, allowed: int) -> str:
    """Simplex iterations on tableau ``T`` whose last row is the reduced objective.

    The objective row holds ``-c`` so a negative entry marks an improving
    column.  Only the first ``allowed`` columns may enter.
    """
    m = len(T) - 1
    obj = T[m]
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(T, basis, leave, enter)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    n = len(c)
    rows: list[tuple[list[Fraction], Fraction, str]] = []
    for a, b in zip(A_ub, b_ub):
        a = [Fraction(x) for x in a]
        b = Fraction(b)
        if b < 0:
            rows.append(([-x for x in a], -b, ">="))
        else:
            rows.append((a, b, "<="))
    for a, b in zip(A_eq, b_eq):
        a = [Fraction(x) for x in a]
        b = Fraction(b)
        if b < 0:
            a, b = [-x for x in a], -b
        rows.append((a, b, "="))

    m = len(rows)
    n_slack = sum(1 for _, _, s in rows if s != "=")
    n_art = sum(1 for _, _, s in rows if s != "<=")
    ncols = n + n_slack + n_art
    T: list[list[Fraction]] = []
    basis: list[int] = []
    si = n
    ai = n + n_slack
    art_cols = []
    zero = Fraction(0)
    for a, b, sense in rows:
        row = a + [zero] * (n_slack + n_art) + [b]
        if sense == "<=":
            row[si] = Fraction(1)
            basis.append(si)
            si += 1
        elif sense == ">=":
            row[si] = Fraction(-1)
            si += 1
            row[ai] = Fraction(1)
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        else:
            row[ai] = Fraction(1)
            basis.append(ai)
            art_cols.append(ai)
            ai += 1
        T.append(row)

    if art_cols:
        # phase 1: maximize -(sum of artificials)
        obj = [zero] * (ncols + 1)
        for j in art_cols:
            obj[j] = Fraction(1)
        for i in range(m):
            if basis[i] in art_cols:
                obj = [o - t for o, t in zip(obj, T[i])]
        T.append(obj)
        _run(T, basis, ncols, ncols)
        if T[m][ncols] != 0:
            return LPResult(INFEASIBLE)
        T.pop()
        # drive remaining artificials out of the basis where possible
        art_set = set(art_cols)
        for i in range(m):
            if basis[i] in art_set:
                j = next((j for j in range(n + n_slack) if T[i][j] != 0), None)
                if j is not None:
                    _pivot(T, basis, i, j)
        keep = [i for i in range(m) if basis[i] not in art_set]
        T = [T[i] for i in keep]
        basis = [basis[i] for i in keep]
        m = len(T)
        # drop artificial columns
        cut = n + n_slack
        T = [row[:cut] + [row[ncols]] for row in T]
        ncols = cut

    obj = [-Fraction(x) for x in c] + [zero] * (ncols - n) + [zero]
    for i in range(m):
        cb = obj[basis[i]]
        if cb:
            obj = [o - cb * t for o, t in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, ncols, ncols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [zero] * ncols
    for i in range(m):
        x[basis[i]] = T[i][ncols]
    return LPResult(OPTIMAL, x[:n], T[m][ncols])


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: int | None = None) -> list[Fraction] | None:
    """Any point of ``{x >= 0 : A_ub x <= b_ub, A_eq x = b_eq}``, or ``None``."""
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.status == OPTIMAL else None
