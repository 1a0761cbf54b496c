"""Stable intersections of plane tropical curves and tropical curves in R^3.

Plane curves are intersected by translating the second curve by ``eps * v``
for a formal infinitesimal ``eps``.  Every coordinate is a pair
``(standard part, eps coefficient)`` compared lexicographically, so the limit
``eps -> 0`` is taken exactly.  Curves in R^3 come from the Cayley embedding
of two Newton polytopes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry.linalg import primitive
from .geometry.polygons import convex_hull
from .geometry.subdivision import GeometryError, cayley, newton_polytope, regular_subdivision
from .hypersurface import Edge, Ray, TropicalComplex, build_curve
from .polynomial import TropicalPolynomial, evaluate, trop_poly_mul
from .skeleton import MetricGraph, skeleton_graph

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True, order=True)
class IntersectionPoint:
    location: Point
    multiplicity: int
    transversal: bool = False


def transversal_multiplicity(dir1: Sequence[int], w1: int, dir2: Sequence[int], w2: int) -> int:
    """``w1 * w2 * |det(dir1, dir2)|`` for primitive non-parallel directions."""
    d = dir1[0] * dir2[1] - dir1[1] * dir2[0]
    if d == 0:
        raise GeometryError("parallel directions do not meet transversally")
    return w1 * w2 * abs(d)


# ------------------------------------------------------------- curve pieces

@dataclass(frozen=True)
class _Piece:
    """Segment ``origin + s * step`` for ``s`` in ``[0, 1]`` or a ray for ``s >= 0``."""

    origin: Point
    step: tuple
    bounded: bool
    direction: tuple[int, int]
    weight: int


def _pieces(C: TropicalComplex) -> list[_Piece]:
    out = []
    for e in C.edges:
        a, b = C.vertices[e.u], C.vertices[e.v]
        step = (b[0] - a[0], b[1] - a[1])
        out.append(_Piece(a, step, True, C.edge_direction(e), e.weight or 1))
    for r in C.rays:
        out.append(_Piece(C.vertices[r.base], tuple(Fraction(x) for x in r.direction), False, r.direction, r.weight or 1))
    return out


def _directions(C: TropicalComplex) -> set[tuple[int, int]]:
    return {p.direction for p in _pieces(C)}


def perturbation_direction(C: TropicalComplex, D: TropicalComplex) -> tuple[int, int]:
    """``(1, K)`` with the least ``K >= 1`` not parallel to any edge or ray of either curve."""
    dirs = _directions(C) | _directions(D)
    K = 1
    while any(u[0] * K - u[1] == 0 for u in dirs):
        K += 1
    return (1, K)


def _lex_in_unit(s: tuple[Fraction, Fraction], bounded: bool) -> bool:
    if s < (0, 0):
        return False
    return not bounded or s <= (1, 0)


def _perturbed_points(C: TropicalComplex, D: TropicalComplex, v: tuple[int, int]) -> list[tuple[Point, int, bool]]:
    """Intersection points of ``C`` and ``D + eps*v`` as (standard location, multiplicity, on an eps-interior)."""
    out = []
    for a in _pieces(C):
        for b in _pieces(D):
            u, w = a.step, b.step
            det = u[0] * (-w[1]) - u[1] * (-w[0])
            if det == 0:
                continue
            # a.origin + s u = b.origin + eps v + t w, solved in (std, eps) parts
            r0 = (b.origin[0] - a.origin[0], b.origin[1] - a.origin[1])
            s = (
                Fraction(r0[0] * (-w[1]) - r0[1] * (-w[0])) / det,
                Fraction(v[0] * (-w[1]) - v[1] * (-w[0])) / det,
            )
            t = (
                Fraction(u[0] * r0[1] - u[1] * r0[0]) / det,
                Fraction(u[0] * v[1] - u[1] * v[0]) / det,
            )
            if not (_lex_in_unit(s, a.bounded) and _lex_in_unit(t, b.bounded)):
                continue
            loc = (a.origin[0] + s[0] * u[0], a.origin[1] + s[0] * u[1])
            mult = transversal_multiplicity(a.direction, a.weight, b.direction, b.weight)
            out.append((loc, mult, 0 < s[0] and (not a.bounded or s[0] < 1) and 0 < t[0] and (not b.bounded or t[0] < 1)))
    return out


def stable_intersection(f: TropicalPolynomial, g: TropicalPolynomial, direction: tuple[int, int] | None = None) -> list[IntersectionPoint]:
    """Stable intersection of the plane curves of ``f`` and ``g`` with multiplicities."""
    C, D = build_curve(f), build_curve(g)
    v = direction or perturbation_direction(C, D)
    if any(u[0] * v[1] - u[1] * v[0] == 0 for u in _directions(C) | _directions(D)):
        raise GeometryError(f"perturbation direction {v} is parallel to an edge or ray")
    total: dict[Point, int] = defaultdict(int)
    hits: dict[Point, int] = defaultdict(int)
    clean: dict[Point, bool] = defaultdict(lambda: True)
    for loc, m, interior in _perturbed_points(C, D, v):
        total[loc] += m
        hits[loc] += 1
        clean[loc] = clean[loc] and interior
    comps = intersection_components(C, D)
    isolated = {c.pieces[0].origin for c in comps if len(c.pieces) == 1 and c.is_point}
    return sorted(
        IntersectionPoint(loc, m, hits[loc] == 1 and clean[loc] and loc in isolated) for loc, m in total.items()
    )


def _area2(points) -> Fraction:
    """Twice the area of the convex hull."""
    hull = convex_hull(points)
    if len(hull) < 3:
        return Fraction(0)
    s = 0
    for (x1, y1), (x2, y2) in zip(hull, hull[1:] + hull[:1]):
        s += x1 * y2 - x2 * y1
    return Fraction(abs(s))


def mixed_cell_intersection(f: TropicalPolynomial, g: TropicalPolynomial) -> list[IntersectionPoint]:
    """Independent computation from the subdivision of ``Newt(f * g)``.

    Every cell of the product subdivision is a sum ``F + G`` of cells of the
    two factors; its mixed area ``area(F+G) - area(F) - area(G)`` is the
    multiplicity of the stable intersection point at the dual vertex.
    """
    h = trop_poly_mul(f, g)
    sub = regular_subdivision(newton_polytope(h))
    out = []
    for fn in sub.functionals:
        w = tuple(-a for a in fn[0])
        F = list(evaluate(f, w)[1])
        G = list(evaluate(g, w)[1])
        FG = [(a[0] + b[0], a[1] + b[1]) for a in F for b in G]
        m2 = _area2(FG) - _area2(F) - _area2(G)
        if m2:
            out.append(IntersectionPoint(w, int(m2 / 2)))
    merged: dict[Point, int] = defaultdict(int)
    for p in out:
        merged[p.location] += p.multiplicity
    return sorted(IntersectionPoint(loc, m) for loc, m in merged.items())


def bezout_sum(f: TropicalPolynomial, g: TropicalPolynomial) -> int:
    """Total stable intersection multiplicity; equals ``deg f * deg g``."""
    f.degree()
    g.degree()
    return sum(p.multiplicity for p in stable_intersection(f, g))


# ------------------------------------------------------------- components

def _meet(a: _Piece, b: _Piece) -> _Piece | None:
    """Intersection of two pieces (point, segment or ray) or ``None``."""
    u, w = a.step, b.step
    r = (b.origin[0] - a.origin[0], b.origin[1] - a.origin[1])
    det = u[0] * w[1] - u[1] * w[0]
    if det != 0:
        s = Fraction(r[0] * w[1] - r[1] * w[0]) / det
        t = Fraction(r[0] * u[1] - r[1] * u[0]) / det
        if s < 0 or (a.bounded and s > 1) or t < 0 or (b.bounded and t > 1):
            return None
        loc = (a.origin[0] + s * u[0], a.origin[1] + s * u[1])
        return _Piece(loc, (Fraction(0), Fraction(0)), True, a.direction, 0)
    if r[0] * u[1] - r[1] * u[0] != 0:
        return None
    uu = u[0] * u[0] + u[1] * u[1]
    if uu == 0:
        # a is a point
        if w[0] == 0 and w[1] == 0:
            return a if a.origin == b.origin else None
        return a if _meet(b, a) is not None else None
    s0 = Fraction(r[0] * u[0] + r[1] * u[1]) / uu
    k = Fraction(w[0] * u[0] + w[1] * u[1]) / uu
    lo_a, hi_a = Fraction(0), (Fraction(1) if a.bounded else None)
    ends = [s0] + ([s0 + k] if b.bounded else [])
    if b.bounded:
        lo_b, hi_b = min(ends), max(ends)
    elif k > 0:
        lo_b, hi_b = s0, None
    else:
        lo_b, hi_b = None, s0
    lo = lo_a if lo_b is None else max(lo_a, lo_b)
    hi = hi_b if hi_a is None else (hi_a if hi_b is None else min(hi_a, hi_b))
    if hi is not None and lo > hi:
        return None
    start = (a.origin[0] + lo * u[0], a.origin[1] + lo * u[1])
    if hi is None:
        return _Piece(start, u, False, a.direction, 0)
    return _Piece(start, ((hi - lo) * u[0], (hi - lo) * u[1]), True, a.direction, 0)


def _contains(p: _Piece, q: Point) -> bool:
    probe = _Piece(q, (Fraction(0), Fraction(0)), True, (1, 0), 0)
    return _meet(p, probe) is not None


@dataclass
class IntersectionComponent:
    pieces: list[_Piece]
    multiplicity: int = 0
    points: tuple[Point, ...] = ()

    @property
    def is_point(self) -> bool:
        return all(p.bounded and p.step == (0, 0) for p in self.pieces) and len({p.origin for p in self.pieces}) == 1

    @property
    def tangent(self) -> bool:
        return self.multiplicity >= 2

    def to_json_obj(self) -> dict:
        return {
            "pieces": [
                {
                    "start": [str(x) for x in p.origin],
                    "end": None if not p.bounded else [str(p.origin[0] + p.step[0]), str(p.origin[1] + p.step[1])],
                    "direction": None if p.bounded else list(p.direction),
                }
                for p in self.pieces
            ],
            "multiplicity": self.multiplicity,
            "points": [[str(x) for x in q] for q in self.points],
            "tangent": self.tangent,
        }


def intersection_components(C: TropicalComplex, D: TropicalComplex) -> list[IntersectionComponent]:
    """Connected components of the set-theoretic intersection ``C ∩ D``."""
    pieces = []
    for a in _pieces(C):
        for b in _pieces(D):
            m = _meet(a, b)
            if m is not None:
                pieces.append(m)
    parent = list(range(len(pieces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if find(i) != find(j) and _meet(pieces[i], pieces[j]) is not None:
                parent[find(i)] = find(j)
    groups: dict[int, list[_Piece]] = defaultdict(list)
    for i, p in enumerate(pieces):
        groups[find(i)].append(p)
    comps = []
    for g in groups.values():
        uniq = list(dict.fromkeys(g))
        comps.append(IntersectionComponent(sorted(uniq, key=lambda p: (p.origin, p.step))))
    comps.sort(key=lambda c: c.pieces[0].origin)
    return comps


def detect_tangencies(f: TropicalPolynomial, g: TropicalPolynomial) -> list[IntersectionComponent]:
    """Components of ``T(f) ∩ T(g)`` with their stable multiplicities.

    A component is a tangency when its stable multiplicity is at least two.
    """
    C, D = build_curve(f), build_curve(g)
    comps = intersection_components(C, D)
    for p in stable_intersection(f, g):
        for c in comps:
            if any(_contains(piece, p.location) for piece in c.pieces):
                c.multiplicity += p.multiplicity
                c.points = c.points + (p.location,)
                break
    return comps


# ------------------------------------------------------------- space curves

@dataclass
class SpaceCurve:
    complex: TropicalComplex
    smooth: bool
    mixed_cells: list[tuple[int, ...]]
    skeleton: MetricGraph

    @property
    def genus(self) -> int:
        return self.skeleton.genus() if self.skeleton.n else 0

    def counts(self) -> dict[str, int]:
        c = self.complex
        return {"vertices": len(c.vertices), "edges": len(c.edges), "rays": len(c.rays), "genus": self.genus}

    def to_json_obj(self) -> dict:
        obj = self.complex.to_json_obj()
        obj["smooth"] = self.smooth
        obj["mixed_cells"] = [list(c) for c in self.mixed_cells]
        obj["genus"] = self.genus
        obj["skeleton"] = self.skeleton.to_json_obj()
        return obj


def _split_dims(points, face, n_first: int) -> tuple[int, int]:
    from .geometry.linalg import affine_rank

    P = [points[i] for i in face if i < n_first]
    Q = [points[i] for i in face if i >= n_first]
    return affine_rank(P), affine_rank(Q)


def space_curve(p: TropicalPolynomial, q: TropicalPolynomial) -> SpaceCurve:
    """Curve ``T(p) ∩ T(q)`` in R^3 from the mixed cells of the Cayley subdivision."""
    if p.n_vars != 3 or q.n_vars != 3:
        raise GeometryError("space curves need two polynomials in three variables")
    P, Q = newton_polytope(p), newton_polytope(q)
    if P.affine_dim < 3 or Q.affine_dim < 3:
        raise GeometryError("both Newton polytopes must be three-dimensional")
    config = cayley(P, Q)
    sub = regular_subdivision(config)
    pts = config.points
    nP = len(P)
    smooth = all(v == 1 for v in sub.normalized_volumes())

    mixed = [k for k, c in enumerate(sub.cells) if min(_split_dims(pts, c, nP)) >= 1]
    index = {k: i for i, k in enumerate(mixed)}
    vertices = [tuple(-a for a in sub.functionals[k][0][:3]) for k in mixed]
    edges, rays = [], []
    for face, c1, c2 in sub.interior_facets():
        if _split_dims(pts, face, nP) == (1, 1):
            edges.append(Edge(index[c1], index[c2], None, tuple(sorted(face))))
    for face, c in sub.boundary_facets():
        if _split_dims(pts, face, nP) != (1, 1):
            continue
        n = next(nv for f, nv, _ in config.hull_facets if face <= f)
        rays.append(Ray(index[c], primitive(n[:3]), None, tuple(sorted(face))))
    C = TropicalComplex(3, vertices, mixed, edges, rays, subdivision=sub)
    G = skeleton_graph(vertices, [(e.u, e.v) for e in edges])
    return SpaceCurve(C, smooth, [sub.cells[k] for k in mixed], G)


def space_curve_counts(d: int, e: int) -> dict[str, Fraction]:
    """Counts for a smooth intersection of surfaces of degrees ``d`` and ``e``."""
    return {
        "vertices": d * d * e + d * e * e,
        "edges": Fraction(3, 2) * (d * d * e + d * e * e) - 2 * d * e,
        "rays": 4 * d * e,
        "genus": Fraction(1, 2) * (d * d * e + d * e * e) - 2 * d * e + 1,
    }
