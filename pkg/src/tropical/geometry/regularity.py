"""Regularity of subdivisions: exact feasibility of a folding height function.

A subdivision is regular when some height function is affine on every cell,
strictly bends downward across every interior facet, and puts unused points
strictly below the cell containing them.  Those are linear conditions in the
heights; we maximise a common slack ``delta <= 1`` and call the subdivision
regular when the optimum is positive.  Local strict concavity across every
interior facet of a subdivision of a convex polytope implies global
concavity, so no other constraints are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .linalg import affine_basis, affine_coordinates
from .lp import OPTIMAL, linprog
from .polytope import facets, normalized_volume
from .subdivision import GeometryError, PointConfiguration, Subdivision, regular_subdivision


@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    heights: tuple[Fraction, ...] | None = None
    slack: Fraction | None = None

    def __bool__(self) -> bool:
        return self.regular


def _containing_cell(points, cells, ineqs, q) -> int | None:
    for k, cell_ineqs in enumerate(ineqs):
        if all(sum(a * b for a, b in zip(n, q)) <= c for n, c in cell_ineqs):
            return k
    return None


def validate_cells(config: PointConfiguration, cells: Sequence[Sequence[int]]) -> None:
    """Cheap consistency checks; raises :class:`GeometryError` on failure."""
    d = config.dim
    pts = config.points
    total = 0
    for c in cells:
        v = normalized_volume(pts, c)
        if v == 0:
            raise GeometryError(f"cell {sorted(c)} is not full-dimensional")
        total += v
    if total != normalized_volume(pts, range(len(pts))):
        raise GeometryError("cell volumes do not add up to the volume of the configuration")
    seen: dict[frozenset[int], int] = {}
    for c in cells:
        for f, _, _ in facets(pts, c):
            seen[f] = seen.get(f, 0) + 1
    if any(k > 2 for k in seen.values()):
        raise GeometryError("a facet is shared by more than two cells")
    for f, k in seen.items():
        if k == 1 and not config.on_boundary(f):
            raise GeometryError(f"facet {sorted(f)} is interior but belongs to one cell")
    if d < 1:
        raise GeometryError("zero-dimensional configuration")


def folding_constraints(config: PointConfiguration, cells: Sequence[Sequence[int]]):
    """Rows ``(coeffs, kind)`` over the heights.

    ``kind`` is ``"eq"`` for ``coeffs . h = 0`` and ``"fold"`` for
    ``coeffs . h >= delta``.
    """
    pts = config.points
    n = len(pts)
    cells = [tuple(sorted(c)) for c in cells]
    bases = []
    rows: list[tuple[dict[int, Fraction], str]] = []
    for c in cells:
        cpts = [pts[i] for i in c]
        basis = [c[j] for j in affine_basis(cpts)]
        bases.append(basis)
        bpts = [pts[i] for i in basis]
        for q in c:
            if q in basis:
                continue
            lam = affine_coordinates(bpts, pts[q])
            row = {b: l for b, l in zip(basis, lam) if l}
            row[q] = row.get(q, 0) - 1
            rows.append((row, "eq"))
    # interior facets
    owner: dict[frozenset[int], list[int]] = {}
    cell_ineqs = []
    for k, c in enumerate(cells):
        fs = facets(pts, c)
        cell_ineqs.append([(nv, off) for _, nv, off in fs])
        for f, _, _ in fs:
            owner.setdefault(f, []).append(k)
    for f, ks in sorted(owner.items(), key=lambda t: sorted(t[0])):
        if len(ks) != 2:
            continue
        k1, k2 = ks
        q = next(i for i in cells[k2] if i not in f)
        basis = bases[k1]
        lam = affine_coordinates([pts[i] for i in basis], pts[q])
        row = {b: l for b, l in zip(basis, lam) if l}
        row[q] = row.get(q, 0) - 1
        rows.append((row, "fold"))
    used = {i for c in cells for i in c}
    for q in range(n):
        if q in used:
            continue
        k = _containing_cell(pts, cells, cell_ineqs, pts[q])
        if k is None:
            raise GeometryError(f"point {pts[q]} lies in no cell")
        basis = bases[k]
        lam = affine_coordinates([pts[i] for i in basis], pts[q])
        row = {b: l for b, l in zip(basis, lam) if l}
        row[q] = row.get(q, 0) - 1
        rows.append((row, "fold"))
    return rows


def _exact_lp(n: int, rows) -> tuple[Fraction, list[Fraction]] | None:
    # variables: h_0..h_{n-1}, delta ; maximise delta
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for row, kind in rows:
        vec = [Fraction(0)] * (n + 1)
        for i, v in row.items():
            vec[i] = Fraction(v)
        if kind == "eq":
            A_eq.append(vec[:n] + [Fraction(0)])
            b_eq.append(0)
        else:
            # coeffs . h >= delta  <=>  -coeffs . h + delta <= 0
            A_ub.append([-x for x in vec[:n]] + [Fraction(1)])
            b_ub.append(0)
    A_ub.append([0] * n + [1])
    b_ub.append(1)
    res = linprog([0] * n + [1], A_ub, b_ub, A_eq, b_eq)
    if res.status != OPTIMAL:
        return None
    return res.objective, res.x[:n]


def _integral(heights: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = lcm(*[Fraction(h).denominator for h in heights]) if heights else 1
    return tuple(Fraction(int(Fraction(h) * den)) for h in heights)


def _check_rows(rows, heights) -> bool:
    for row, kind in rows:
        v = sum(Fraction(c) * heights[i] for i, c in row.items())
        if kind == "eq" and v != 0:
            return False
        if kind == "fold" and v <= 0:
            return False
    return True


def _float_witness(n: int, rows) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Floating-point LP followed by exact verification of rounded heights.

    Returns ``(decided, heights)``; ``decided`` is false when the float
    answer could not be certified and the exact solver must run.
    """
    import numpy as np
    from scipy.optimize import linprog as float_linprog

    A_ub, A_eq = [], []
    for row, kind in rows:
        vec = np.zeros(n + 1)
        for i, v in row.items():
            vec[i] = float(v)
        if kind == "eq":
            A_eq.append(vec)
        else:
            vec = -vec
            vec[n] = 1.0
            A_ub.append(vec)
    c = np.zeros(n + 1)
    c[n] = -1.0
    bounds = [(0, None)] * n + [(None, 1)]
    res = float_linprog(
        c,
        A_ub=np.array(A_ub) if A_ub else None,
        b_ub=np.zeros(len(A_ub)) if A_ub else None,
        A_eq=np.array(A_eq) if A_eq else None,
        b_eq=np.zeros(len(A_eq)) if A_eq else None,
        bounds=bounds,
        method="highs",
    )
    if res.status != 0 or -res.fun < 1e-6:
        return False, None
    h = res.x[:n]
    for scale in (1, 4, 16, 256, 4096):
        cand = tuple(Fraction(round(x * scale)) for x in h)
        if _check_rows(rows, cand):
            return True, cand
    return False, None


def is_regular(
    config: PointConfiguration | Subdivision,
    cells: Sequence[Sequence[int]] | None = None,
    validate: bool = True,
    method: str = "exact",
) -> RegularityResult:
    """Decide whether ``cells`` is a regular subdivision of ``config``.

    ``method="fast"`` first tries a floating-point solve and certifies the
    rounded witness exactly; anything it cannot certify goes to the exact
    solver, so the answer is exact either way.  With ``validate`` the cells
    are checked for consistency and the witness is confirmed by recomputing
    the subdivision it induces.
    """
    if isinstance(config, Subdivision):
        cells = config.cells if cells is None else cells
        config = config.config
    if cells is None:
        raise GeometryError("no cells given")
    config = PointConfiguration(config.points)
    if validate:
        validate_cells(config, cells)
    rows = folding_constraints(config, cells)
    n = len(config)
    heights = None
    slack = None
    if method == "fast":
        ok, h = _float_witness(n, rows)
        if ok:
            heights = h
    if heights is None:
        sol = _exact_lp(n, rows)
        if sol is None:
            raise GeometryError("regularity program failed")
        slack, h = sol
        if slack <= 0:
            return RegularityResult(False, None, slack)
        heights = _integral(h)
    if slack is None:
        slack = min(
            sum(Fraction(c) * heights[i] for i, c in row.items()) for row, kind in rows if kind == "fold"
        ) if any(k == "fold" for _, k in rows) else Fraction(1)
    if validate:
        induced = regular_subdivision(config.with_heights(heights))
        if induced.cells != tuple(sorted(tuple(sorted(c)) for c in cells)):
            raise GeometryError("regularity witness does not reproduce the subdivision")
    return RegularityResult(True, tuple(heights), slack)


def triangulation_witness(points: Sequence[Sequence[int]], triangles: Sequence[Sequence[int]]) -> RegularityResult:
    """Regularity of a plane triangulation using every point, with integer witness heights.

    Uses only the folding condition across interior edges.  A rounded
    floating-point solution is certified exactly; uncertified cases fall back
    to the exact program.
    """
    from .linalg import det

    edge_owner: dict[tuple[int, int], list[int]] = {}
    for k, t in enumerate(triangles):
        a, b, c = sorted(t)
        for e in ((a, b), (a, c), (b, c)):
            edge_owner.setdefault(e, []).append(k)
    rows = []
    for (a, b), ks in edge_owner.items():
        if len(ks) != 2:
            continue
        c = next(v for v in triangles[ks[0]] if v not in (a, b))
        d = next(v for v in triangles[ks[1]] if v not in (a, b))
        P = [list(points[i]) + [1] for i in (a, b, c)]
        D = det(P)
        sign = 1 if D > 0 else -1
        lam = []
        for j in range(3):
            Q = [r[:] for r in P]
            Q[j] = list(points[d]) + [1]
            lam.append(sign * det(Q))
        row = {a: lam[0], b: lam[1], c: lam[2], d: -abs(D)}
        rows.append((row, "fold"))
    n = len(points)
    ok, h = _float_witness(n, rows)
    if ok:
        return RegularityResult(True, h, None)
    sol = _exact_lp(n, rows)
    if sol is None or sol[0] <= 0:
        return RegularityResult(False, None, None if sol is None else sol[0])
    return RegularityResult(True, _integral(sol[1]), sol[0])
