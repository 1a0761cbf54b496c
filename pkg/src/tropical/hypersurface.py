"""Tropical plane curves and surfaces built from their dual subdivisions.

Cells of the subdivision induced by the coefficients become vertices,
interior codimension-one faces become bounded edges and boundary ones become
rays.  Surfaces additionally get two-dimensional cells from the edges of the
subdivision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .geometry.linalg import integer_vector, primitive
from .geometry.subdivision import (
    GeometryError,
    PointConfiguration,
    Subdivision,
    is_unimodular,
    newton_polytope,
    regular_subdivision,
)
from .polynomial import TropicalPolynomial

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: int | None
    dual: tuple[int, ...]


@dataclass(frozen=True)
class Ray:
    base: int
    direction: tuple[int, ...]
    weight: int | None
    dual: tuple[int, ...]


@dataclass(frozen=True)
class Cell2D:
    """Two-dimensional piece of a tropical surface.

    Bounded cells list their vertex cycle.  Unbounded ones list the chain of
    vertices along their bounded part; ``rays`` are the indices of the two
    rays closing it off.
    """

    bounded: bool
    vertices: tuple[int, ...]
    dual: tuple[int, ...]
    rays: tuple[int, ...] = ()


@dataclass
class TropicalComplex:
    ambient_dim: int
    vertices: list[Vector]
    vertex_cells: list[int]
    edges: list[Edge]
    rays: list[Ray]
    cells2d: list[Cell2D] = field(default_factory=list)
    subdivision: Subdivision | None = field(default=None, compare=False, repr=False)

    def counts(self) -> dict[str, int]:
        out = {"vertices": len(self.vertices), "edges": len(self.edges), "rays": len(self.rays)}
        if self.ambient_dim == 3:
            out["bounded_cells"] = sum(1 for c in self.cells2d if c.bounded)
            out["unbounded_cells"] = sum(1 for c in self.cells2d if not c.bounded)
        return out

    def degree(self, v: int) -> int:
        return sum((e.u == v) + (e.v == v) for e in self.edges) + sum(r.base == v for r in self.rays)

    def edge_direction(self, e: Edge) -> tuple[int, ...]:
        """Primitive direction from ``e.u`` towards ``e.v``."""
        return integer_vector([b - a for a, b in zip(self.vertices[e.u], self.vertices[e.v])])

    def to_json_obj(self) -> dict:
        obj = {
            "ambient_dim": self.ambient_dim,
            "vertices": [{"point": [str(x) for x in v], "dual_cell": c} for v, c in zip(self.vertices, self.vertex_cells)],
            "edges": [{"ends": [e.u, e.v], "weight": e.weight, "dual": list(e.dual)} for e in self.edges],
            "rays": [{"base": r.base, "direction": list(r.direction), "weight": r.weight, "dual": list(r.dual)} for r in self.rays],
        }
        if self.ambient_dim == 3:
            obj["cells2d"] = [
                {"bounded": c.bounded, "vertices": list(c.vertices), "dual": list(c.dual), "rays": list(c.rays)} for c in self.cells2d
            ]
        if self.subdivision is not None:
            obj["subdivision"] = self.subdivision.to_json_obj()
        return obj

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1)

    @classmethod
    def from_json_obj(cls, obj) -> "TropicalComplex":
        sub = Subdivision.from_json_obj(obj["subdivision"]) if "subdivision" in obj else None
        return cls(
            ambient_dim=obj["ambient_dim"],
            vertices=[tuple(Fraction(x) for x in v["point"]) for v in obj["vertices"]],
            vertex_cells=[v["dual_cell"] for v in obj["vertices"]],
            edges=[Edge(e["ends"][0], e["ends"][1], e["weight"], tuple(e["dual"])) for e in obj["edges"]],
            rays=[Ray(r["base"], tuple(r["direction"]), r["weight"], tuple(r["dual"])) for r in obj["rays"]],
            cells2d=[Cell2D(c["bounded"], tuple(c["vertices"]), tuple(c["dual"]), tuple(c["rays"])) for c in obj.get("cells2d", [])],
            subdivision=sub,
        )


def _segment_weight(points: Sequence[Sequence[int]], face) -> int:
    """Lattice length of a segment spanned by lattice points."""
    pts = sorted(points[i] for i in face)
    g = 0
    for a, b in zip(pts[0], pts[-1]):
        g = gcd(g, b - a)
    return g


def _outward_normal(config: PointConfiguration, face) -> tuple[int, ...]:
    for f, n, _ in config.hull_facets:
        if all(i in f for i in face):
            return n
    raise GeometryError("face is not on the boundary of the Newton polytope")


def _subdivision_for(p: TropicalPolynomial, n_vars: int) -> Subdivision:
    if p.n_vars != n_vars:
        raise GeometryError(f"expected a polynomial in {n_vars} variables, got {p.n_vars}")
    config = newton_polytope(p)
    if config.affine_dim < n_vars:
        raise GeometryError(
            f"Newton polytope has dimension {config.affine_dim} < {n_vars}; "
            "the tropical hypersurface is a union of parallel hyperplanes, not a "
            "polyhedral complex with vertices"
        )
    return regular_subdivision(config)


def curve_from_subdivision(sub: Subdivision) -> TropicalComplex:
    """Plane tropical curve dual to a regular subdivision with stored functionals."""
    if sub.dim != 2 or sub.functionals is None:
        raise GeometryError("need a two-dimensional subdivision with heights")
    vertices = [tuple(-a for a in f[0]) for f in sub.functionals]
    edges = []
    for face, c1, c2 in sub.interior_facets():
        edges.append(Edge(c1, c2, _segment_weight(sub.points, face), tuple(sorted(face))))
    rays = []
    for face, c in sub.boundary_facets():
        n = _outward_normal(sub.config, face)
        rays.append(Ray(c, n, _segment_weight(sub.points, face), tuple(sorted(face))))
    return TropicalComplex(2, vertices, list(range(len(vertices))), edges, rays, subdivision=sub)


def build_curve(p: TropicalPolynomial) -> TropicalComplex:
    return curve_from_subdivision(_subdivision_for(p, 2))


def _cycle_around(cells: list[int], links: list[tuple[int, int]]) -> tuple[list[int], bool]:
    """Order the cells around a subdivision edge; returns (order, closed)."""
    adj: dict[int, list[int]] = {c: [] for c in cells}
    for a, b in links:
        adj[a].append(b)
        adj[b].append(a)
    ends = [c for c in cells if len(adj[c]) < 2]
    start = min(ends) if ends else min(cells)
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [c for c in sorted(adj[cur]) if c != prev and c not in order]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order, not ends


def surface_from_subdivision(sub: Subdivision) -> TropicalComplex:
    if sub.dim != 3 or sub.functionals is None:
        raise GeometryError("need a three-dimensional subdivision with heights")
    config = sub.config
    vertices = [tuple(-a for a in f[0]) for f in sub.functionals]
    edges = []
    for face, c1, c2 in sub.interior_facets():
        edges.append(Edge(c1, c2, None, tuple(sorted(face))))
    rays = []
    ray_of_face = {}
    for face, c in sub.boundary_facets():
        ray_of_face[face] = len(rays)
        rays.append(Ray(c, _outward_normal(config, face), None, tuple(sorted(face))))
    interior = sub.interior_facets()
    cells2d = []
    for seg, cells in sub.faces(1).items():
        links = [(c1, c2) for f, c1, c2 in interior if seg <= f]
        order, closed = _cycle_around(cells, links)
        if config.on_boundary(seg):
            touching = tuple(sorted(ray_of_face[f] for f in ray_of_face if seg <= f))
            cells2d.append(Cell2D(False, tuple(order), tuple(sorted(seg)), touching))
        else:
            if not closed and len(cells) > 1:
                raise GeometryError("interior edge is not surrounded by a cycle of cells")
            cells2d.append(Cell2D(True, tuple(order), tuple(sorted(seg))))
    return TropicalComplex(3, vertices, list(range(len(vertices))), edges, rays, cells2d, subdivision=sub)


def build_surface(p: TropicalPolynomial) -> TropicalComplex:
    return surface_from_subdivision(_subdivision_for(p, 3))


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    vertex: int | None = None
    residual: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.balanced


def check_balancing(T: TropicalComplex) -> BalanceResult:
    """Weighted sum of primitive outgoing directions vanishes at every vertex."""
    if T.ambient_dim != 2:
        raise GeometryError("balancing is checked for plane curves only")
    sums = [[0, 0] for _ in T.vertices]
    for e in T.edges:
        d = T.edge_direction(e)
        for k in range(2):
            sums[e.u][k] += e.weight * d[k]
            sums[e.v][k] -= e.weight * d[k]
    for r in T.rays:
        d = primitive(r.direction)
        for k in range(2):
            sums[r.base][k] += r.weight * d[k]
    for v, s in enumerate(sums):
        if any(s):
            return BalanceResult(False, v, tuple(s))
    return BalanceResult(True)


def is_smooth(T: TropicalComplex) -> bool:
    if T.subdivision is None:
        raise GeometryError("complex carries no dual subdivision")
    if not is_unimodular(T.subdivision):
        return False
    if T.ambient_dim == 2:
        weights_one = all(e.weight == 1 for e in T.edges) and all(r.weight == 1 for r in T.rays)
        trivalent = all(T.degree(v) == 3 for v in range(len(T.vertices)))
        return weights_one and trivalent
    return True


@dataclass(frozen=True)
class CurveCounts:
    vertices: int
    edges: int
    rays: int


@dataclass(frozen=True)
class SurfaceCounts:
    vertices: int
    edges: int
    rays: int
    bounded_cells: int
    unbounded_cells: int
    euler_characteristic: int


def smooth_curve_counts(d: int) -> CurveCounts:
    if d < 1:
        raise ValueError("degree must be positive")
    return CurveCounts(d * d, 3 * d * (d - 1) // 2, 3 * d)


def smooth_surface_counts(d: int) -> SurfaceCounts:
    if d < 1:
        raise ValueError("degree must be positive")
    return SurfaceCounts(
        d**3,
        2 * d * d * (d - 1),
        4 * d * d,
        d * (d - 1) * (7 * d - 11) // 6,
        6 * d * d,
        (d - 1) * (d - 2) * (d - 3) // 6 + 1,
    )


def curve_from_triangulation(points: Sequence[Sequence[int]], triangles: Sequence[Sequence[int]], heights: Sequence) -> TropicalComplex:
    """Curve dual to a plane triangulation induced by ``heights`` (not re-derived)."""
    from .geometry.linalg import solve

    tris = [tuple(sorted(t)) for t in sorted(tuple(sorted(t)) for t in triangles)]
    vertices = []
    for t in tris:
        A = [[points[i][0], points[i][1], 1] for i in t]
        a1, a2, _ = solve(A, [heights[i] for i in t])
        vertices.append((-a1, -a2))
    owner: dict[tuple[int, int], list[int]] = {}
    for k, (a, b, c) in enumerate(tris):
        for e in ((a, b), (a, c), (b, c)):
            owner.setdefault(e, []).append(k)
    edges, rays = [], []
    for (a, b), ks in sorted(owner.items()):
        pa, pb = points[a], points[b]
        w = gcd(pb[0] - pa[0], pb[1] - pa[1])
        if len(ks) == 2:
            edges.append(Edge(ks[0], ks[1], w, (a, b)))
        else:
            c = next(v for v in tris[ks[0]] if v not in (a, b))
            n = primitive((pb[1] - pa[1], pa[0] - pb[0]))
            pc = points[c]
            if n[0] * (pc[0] - pa[0]) + n[1] * (pc[1] - pa[1]) > 0:
                n = (-n[0], -n[1])
            rays.append(Ray(ks[0], n, w, (a, b)))
    return TropicalComplex(2, vertices, list(range(len(vertices))), edges, rays)
