"""Facets, faces, lattice points and volumes of small lattice polytopes.

Everything works on integer point lists in ``R^d`` for ``d <= 5`` by
exhaustive hyperplane enumeration.  Faces are represented as frozensets of
point indices; every face of a polytope is an intersection of facets, which
is how lower-dimensional faces are produced.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .envelope import in_hull
from .linalg import affine_rank, det, hyperplane_through, primitive

Point = tuple[int, ...]


def facets(points: Sequence[Sequence[int]], idx: Iterable[int] | None = None) -> list[tuple[frozenset[int], tuple[int, ...], int]]:
    """Facets of ``conv(points[idx])``, assumed full-dimensional in ``R^d``.

    Returns ``(tight point indices, outward normal, offset)`` with the normal
    primitive and ``normal . x <= offset`` on the polytope.
    """
    idx = sorted(range(len(points)) if idx is None else idx)
    d = len(points[idx[0]])
    out: list[tuple[frozenset[int], tuple[int, ...], int]] = []
    found: list[frozenset[int]] = []
    for combo in itertools.combinations(idx, d):
        if any(set(combo) <= f for f in found):
            continue
        hp = hyperplane_through([points[i] for i in combo])
        if hp is None:
            continue
        n = primitive(hp[0])
        c = sum(a * b for a, b in zip(n, points[combo[0]]))
        above = below = False
        tight = []
        for i in idx:
            v = sum(a * b for a, b in zip(n, points[i]))
            if v > c:
                above = True
            elif v < c:
                below = True
            else:
                tight.append(i)
            if above and below:
                break
        if above and below:
            continue
        if above:
            n = tuple(-a for a in n)
            c = -c
        face = frozenset(tight)
        if affine_rank([points[i] for i in face]) != d - 1:
            continue
        found.append(face)
        out.append((face, tuple(n), c))
    return out


def facet_sets(points: Sequence[Sequence[int]], idx: Iterable[int] | None = None) -> list[frozenset[int]]:
    return [f for f, _, _ in facets(points, idx)]


def subfaces(points: Sequence[Sequence[int]], face: frozenset[int], dim: int, cell_facets: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    """Faces of codimension one inside ``face`` (of dimension ``dim``)."""
    if dim == 1:
        # endpoints of a segment
        pts = sorted(face, key=lambda i: tuple(points[i]))
        return [frozenset([pts[0]]), frozenset([pts[-1]])]
    cands = set()
    for g in cell_facets:
        inter = face & g
        if inter != face and len(inter) >= dim and affine_rank([points[i] for i in inter]) == dim - 1:
            cands.add(inter)
    return [c for c in cands if not any(c < o for o in cands)]


def face_lattice(points: Sequence[Sequence[int]], idx: Iterable[int]) -> dict[int, list[frozenset[int]]]:
    """All faces of the full-dimensional polytope ``conv(points[idx])`` by dimension."""
    idx = frozenset(idx)
    d = len(points[next(iter(idx))])
    top = facet_sets(points, idx)
    levels: dict[int, list[frozenset[int]]] = {d: [idx], d - 1: sorted(top, key=sorted)}
    current = top
    for k in range(d - 1, 0, -1):
        nxt = set()
        for f in current:
            nxt.update(subfaces(points, f, k, top))
        current = sorted(nxt, key=sorted)
        levels[k - 1] = current
    return levels


def pulling_triangulation(points: Sequence[Sequence[int]], face: frozenset[int], dim: int, cell_facets: Sequence[frozenset[int]]) -> list[tuple[int, ...]]:
    """Simplices (``dim + 1`` indices each) triangulating ``face`` by pulling its least vertex."""
    if dim == 0:
        return [(min(face),)]
    if dim == 1:
        a, b = subfaces(points, face, 1, cell_facets)
        return [(min(a), min(b))]
    apex = min(face, key=lambda i: tuple(points[i]))
    out = []
    for sub in subfaces(points, face, dim, cell_facets):
        if apex in sub:
            continue
        for s in pulling_triangulation(points, sub, dim - 1, cell_facets):
            out.append((apex,) + s)
    return out


def simplex_volume(points: Sequence[Sequence[int]], simplex: Sequence[int]) -> int:
    """Normalized volume ``d! * vol`` of a full-dimensional simplex."""
    p0 = points[simplex[0]]
    return abs(det([[a - b for a, b in zip(points[i], p0)] for i in simplex[1:]]))


def normalized_volume(points: Sequence[Sequence[int]], idx: Iterable[int]) -> int:
    idx = frozenset(idx)
    d = len(points[next(iter(idx))])
    if affine_rank([points[i] for i in idx]) < d:
        return 0
    if len(idx) == d + 1:
        return simplex_volume(points, sorted(idx))
    fs = facet_sets(points, idx)
    return sum(simplex_volume(points, s) for s in pulling_triangulation(points, idx, d, fs))


def volume(points: Sequence[Sequence[int]], idx: Iterable[int] | None = None) -> Fraction:
    idx = range(len(points)) if idx is None else idx
    pts = list(points)
    d = len(pts[0])
    return Fraction(normalized_volume(pts, idx), factorial(d))


def lattice_points(support: Sequence[Sequence[int]]) -> list[Point]:
    """All lattice points of ``conv(support)``, sorted lexicographically."""
    pts = sorted({tuple(int(x) for x in p) for p in support})
    d = len(pts[0])
    lo = [min(p[i] for p in pts) for i in range(d)]
    hi = [max(p[i] for p in pts) for i in range(d)]
    box = itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
    if affine_rank(pts) == d:
        ineqs = [(n, c) for _, n, c in facets(pts)]
        return [q for q in box if all(sum(a * b for a, b in zip(n, q)) <= c for n, c in ineqs)]
    return [q for q in box if q in pts or in_hull(pts, q)]


def interior_lattice_points(support: Sequence[Sequence[int]]) -> list[Point]:
    pts = sorted({tuple(p) for p in support})
    d = len(pts[0])
    if affine_rank(pts) < d:
        return []
    ineqs = [(n, c) for _, n, c in facets(pts)]
    return [q for q in lattice_points(pts) if all(sum(a * b for a, b in zip(n, q)) < c for n, c in ineqs)]
