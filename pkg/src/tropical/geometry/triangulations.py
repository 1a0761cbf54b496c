"""Enumeration of unimodular triangulations of lattice polygons by edge flips."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .polygons import BudgetExceeded, LatticePolygon, point_permutations
from .subdivision import PointConfiguration, Subdivision

Triangle = tuple[int, int, int]
Triangulation = tuple[Triangle, ...]


def _orient(a, b, c) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _canon(tris) -> Triangulation:
    return tuple(sorted(tuple(sorted(t)) for t in tris))


def placing_triangulation(points: Sequence[tuple[int, int]]) -> Triangulation:
    """Triangulation using every point, adding points in lexicographic order.

    Each new point is lexicographically largest so far, hence outside the
    current hull; it is joined to the hull edges it sees strictly.  The
    triangles are empty, so for lattice points they are unimodular.
    """
    order = sorted(range(len(points)), key=lambda i: points[i])
    P = [points[i] for i in order]
    k = 2
    while k < len(P) and _orient(P[0], P[1], P[k]) == 0:
        k += 1
    if k == len(P):
        raise ValueError("points are collinear")
    # initial collinear chain 0..k-1 and apex k
    tris = [(order[i], order[i + 1], order[k]) for i in range(k - 1)]
    # boundary as a counterclockwise cycle of original indices
    if _orient(P[0], P[k - 1], P[k]) > 0:
        boundary = [order[i] for i in range(k)] + [order[k]]
    else:
        boundary = [order[k]] + [order[i] for i in range(k - 1, -1, -1)]
    for j in range(k + 1, len(P)):
        p = order[j]
        n = len(boundary)
        visible = [
            _orient(points[boundary[i]], points[boundary[(i + 1) % n]], points[p]) < 0 for i in range(n)
        ]
        for i in range(n):
            if visible[i]:
                tris.append((boundary[i], boundary[(i + 1) % n], p))
        # visible edges form one contiguous run; splice p in its place
        start = next(i for i in range(n) if visible[i] and not visible[i - 1])
        end = start
        while visible[end % n]:
            end += 1
        # vertices boundary[start+1 .. end-1] become interior
        keep = [boundary[(end + t) % n] for t in range(n - (end - start) + 1)]
        boundary = keep + [p]
    return _canon(tris)


def _edges(tri: Triangulation) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for k, (a, b, c) in enumerate(tri):
        for e in ((a, b), (a, c), (b, c)):
            out.setdefault(e, []).append(k)
    return out


def flips(points: Sequence[tuple[int, int]], tri: Triangulation) -> Iterator[Triangulation]:
    """All triangulations one diagonal flip away from ``tri``."""
    for (a, b), ks in _edges(tri).items():
        if len(ks) != 2:
            continue
        t1, t2 = tri[ks[0]], tri[ks[1]]
        c = next(v for v in t1 if v not in (a, b))
        d = next(v for v in t2 if v not in (a, b))
        pc, pd = points[c], points[d]
        if _orient(pc, pd, points[a]) * _orient(pc, pd, points[b]) >= 0:
            continue
        rest = [t for i, t in enumerate(tri) if i not in ks]
        yield _canon(rest + [(a, c, d), (b, c, d)])


def _apply(perm: Sequence[int], tri: Triangulation) -> Triangulation:
    return _canon(tuple(perm[v] for v in t) for t in tri)


@dataclass(frozen=True)
class TriangulationOrbit:
    representative: Triangulation
    size: int


def triangulation_orbits(
    P: LatticePolygon, up_to_symmetry: bool = True, budget: float | None = None
) -> tuple[tuple[tuple[int, int], ...], list[TriangulationOrbit]]:
    """Breadth-first search of the flip graph on canonical orbit representatives.

    Returns the lattice points (indexing the triangles) and the orbits in
    discovery order.  Orbit sizes are ``|G| / |stabilizer|``.
    """
    points = P.lattice_points
    perms = point_permutations(P) if up_to_symmetry else [tuple(range(len(points)))]
    group = len(perms)

    def canonical(t: Triangulation) -> Triangulation:
        return min(_apply(g, t) for g in perms)

    deadline = None if budget is None else time.monotonic() + budget
    seed = canonical(placing_triangulation(points))
    seen = {seed}
    queue = deque([seed])
    orbits = []
    while queue:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"triangulation search exceeded {budget} s after {len(orbits)} orbits")
        t = queue.popleft()
        stab = sum(1 for g in perms if _apply(g, t) == t)
        orbits.append(TriangulationOrbit(t, group // stab))
        for u in flips(points, t):
            cu = canonical(u)
            if cu not in seen:
                seen.add(cu)
                queue.append(cu)
    return points, orbits


def enumerate_unimodular_triangulations(
    P: LatticePolygon, up_to_symmetry: bool = False, budget: float | None = None
) -> list[Subdivision]:
    points, orbits = triangulation_orbits(P, up_to_symmetry, budget)
    config = PointConfiguration(points)
    return [Subdivision(config, o.representative) for o in orbits]


def count_unimodular_triangulations(P: LatticePolygon, up_to_symmetry: bool = False) -> int:
    return len(triangulation_orbits(P, up_to_symmetry)[1])
