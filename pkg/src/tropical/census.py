"""Census of troplanar graphs: skeletons of smooth tropical plane curves of a given genus.

For every maximal polygon with ``g`` interior points we run over the
unimodular triangulations (up to lattice symmetry), keep the regular ones,
draw the dual curve from witness heights and classify the skeletons up to
isomorphism.  Lengths are ignored in the classification.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .geometry.polygons import BudgetExceeded, LatticePolygon, enumerate_maximal_polygons
from .geometry.regularity import triangulation_witness
from .geometry.triangulations import triangulation_orbits
from .hypersurface import curve_from_triangulation
from .skeleton import MetricGraph, canonical_certificate, skeleton_graph, skeletonize


@dataclass(frozen=True)
class PolygonCensus:
    polygon: tuple[tuple[int, int], ...]
    total: int
    orbits: int
    regular_total: int
    regular_orbits: int
    complete: bool = True

    def to_json_obj(self) -> dict:
        return {
            "vertices": [list(v) for v in self.polygon],
            "triangulations": self.total,
            "orbits": self.orbits,
            "regular_triangulations": self.regular_total,
            "regular_orbits": self.regular_orbits,
            "complete": self.complete,
        }


@dataclass(frozen=True)
class SkeletonClass:
    certificate: str
    graph: MetricGraph
    polygon_index: int
    points: tuple[tuple[int, int], ...]
    triangulation: tuple[tuple[int, int, int], ...]
    heights: tuple[int, ...]
    sprawling: bool

    def to_json_obj(self) -> dict:
        return {
            "certificate": self.certificate,
            "graph": self.graph.to_json_obj(),
            "polygon_index": self.polygon_index,
            "points": [list(p) for p in self.points],
            "triangulation": [list(t) for t in self.triangulation],
            "heights": [int(h) for h in self.heights],
            "sprawling": self.sprawling,
        }


@dataclass
class CensusRecord:
    genus: int
    polygons: list[PolygonCensus]
    classes: list[SkeletonClass]
    complete: bool = True
    elapsed: float = field(default=0.0, compare=False)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def table(self) -> str:
        lines = [f"genus {self.genus}"]
        for i, p in enumerate(self.polygons):
            mark = "" if p.complete else "  (incomplete)"
            verts = " ".join(f"({x},{y})" for x, y in p.polygon)
            lines.append(
                f"polygon {i}: {verts}  triangulations {p.total} ({p.orbits} up to symmetry), "
                f"regular {p.regular_total} ({p.regular_orbits}){mark}"
            )
        lines.append(f"classes: {self.class_count}")
        return "\n".join(lines)

    def to_json_obj(self) -> dict:
        return {
            "genus": self.genus,
            "complete": self.complete,
            "polygons": [p.to_json_obj() for p in self.polygons],
            "classes": [c.to_json_obj() for c in self.classes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1)


def dual_skeleton(points, triangles) -> MetricGraph:
    """Combinatorial skeleton of the curve dual to a triangulation (unit lengths).

    Vertices are triangles and edges are interior edges of the
    triangulation; the metric is replaced by unit lengths, which is all the
    classification needs.
    """
    owner: dict[tuple[int, int], list[int]] = {}
    for k, (a, b, c) in enumerate(triangles):
        for e in ((a, b), (a, c), (b, c)):
            owner.setdefault(e, []).append(k)
    edges = [tuple(ks) for ks in owner.values() if len(ks) == 2]
    # unit lattice length along every edge: place triangle k at (k, 0)
    return skeleton_graph([(k, 0) for k in range(len(triangles))], edges)


def _census_polygon(args):
    index, vertices, deadline = args
    P = LatticePolygon(vertices)
    budget = None if deadline is None else max(deadline - time.time(), 0.0)
    try:
        points, orbits = triangulation_orbits(P, up_to_symmetry=True, budget=budget)
    except BudgetExceeded:
        return index, PolygonCensus(tuple(P.vertices), 0, 0, 0, 0, complete=False), {}
    found: dict[str, tuple] = {}
    reg_total = reg_orbits = 0
    complete = True
    for o in orbits:
        if deadline is not None and time.time() > deadline:
            complete = False
            break
        res = triangulation_witness(points, o.representative)
        if not res.regular:
            continue
        reg_total += o.size
        reg_orbits += 1
        cert = canonical_certificate(dual_skeleton(points, o.representative)).decode()
        if cert not in found or o.representative < found[cert][0]:
            found[cert] = (o.representative, res.heights)
    total = sum(o.size for o in orbits)
    return index, PolygonCensus(tuple(P.vertices), total, len(orbits), reg_total, reg_orbits, complete), {
        "points": points,
        "found": found,
    }


def troplanar_census(g: int, budget: float | None = None, workers: int = 1, max_genus: int = 6) -> CensusRecord:
    """Classify skeletons of smooth tropical plane curves of genus ``g``.

    ``budget`` is a wall-clock limit in seconds; when it runs out the record
    is returned with ``complete=False`` and unfinished polygons marked.
    """
    if g < 2:
        raise ValueError("census needs genus at least 2")
    start = time.time()
    deadline = None if budget is None else start + budget
    polygons = enumerate_maximal_polygons(g, max_genus=max_genus)
    jobs = [(i, tuple(P.vertices), deadline) for i, P in enumerate(polygons)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_census_polygon, jobs))
    else:
        results = [_census_polygon(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    inventory = [r[1] for r in results]
    best: dict[str, tuple] = {}
    for index, _, data in results:
        for cert, (tri, heights) in data.get("found", {}).items():
            key = (index, tri)
            if cert not in best or key < best[cert][0]:
                best[cert] = (key, data["points"], heights)
    classes = []
    for cert in sorted(best):
        (index, tri), points, heights = best[cert]
        curve = curve_from_triangulation(points, tri, heights)
        G = skeletonize(curve)
        classes.append(SkeletonClass(cert, G, index, tuple(points), tri, tuple(int(h) for h in heights), G.is_sprawling()))
    return CensusRecord(g, inventory, classes, all(p.complete for p in inventory), time.time() - start)
