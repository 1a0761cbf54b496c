"""Point configurations with heights and the subdivisions they induce."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm
from typing import TYPE_CHECKING, Iterable, Sequence

from ..semiring import TropicalError
from .linalg import affine_rank, hyperplane_through
from .polytope import facets, face_lattice, lattice_points, normalized_volume

if TYPE_CHECKING:
    from ..polynomial import TropicalPolynomial

Point = tuple[int, ...]
Cell = tuple[int, ...]


class GeometryError(TropicalError):
    pass


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[Point, ...]
    heights: tuple[Fraction | None, ...] | None = None

    def __post_init__(self):
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        if not pts:
            raise GeometryError("empty point configuration")
        if len({len(p) for p in pts}) != 1:
            raise GeometryError("points have different dimensions")
        if len(set(pts)) != len(pts):
            raise GeometryError("points must be distinct")
        object.__setattr__(self, "points", pts)
        if self.heights is not None:
            hs = tuple(None if h is None else Fraction(h) for h in self.heights)
            if len(hs) != len(pts):
                raise GeometryError(f"{len(hs)} heights for {len(pts)} points")
            object.__setattr__(self, "heights", hs)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p: Sequence[int]) -> int:
        return self.points.index(tuple(p))

    @cached_property
    def affine_dim(self) -> int:
        return affine_rank(self.points)

    @cached_property
    def hull_facets(self) -> list[tuple[frozenset[int], tuple[int, ...], int]]:
        if self.affine_dim < self.dim:
            raise GeometryError("configuration is not full-dimensional")
        return facets(self.points)

    def on_boundary(self, face: Iterable[int]) -> bool:
        face = list(face)
        return any(all(i in f for i in face) for f, _, _ in self.hull_facets)

    def with_heights(self, heights: Sequence) -> "PointConfiguration":
        return PointConfiguration(self.points, tuple(heights))

    def to_json_obj(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "heights": None if self.heights is None else [None if h is None else str(h) for h in self.heights],
        }


@dataclass(frozen=True)
class Subdivision:
    """Cells of a subdivision of a full-dimensional configuration.

    ``functionals[k]`` is ``(a, b)`` with height ``h(p) = a . p + b`` on the
    points of cell ``k``; it is ``None`` for subdivisions given without
    heights.
    """

    config: PointConfiguration
    cells: tuple[Cell, ...]
    functionals: tuple[tuple[tuple[Fraction, ...], Fraction], ...] | None = None

    def __post_init__(self):
        cells = tuple(tuple(sorted(c)) for c in self.cells)
        order = sorted(range(len(cells)), key=lambda k: cells[k])
        object.__setattr__(self, "cells", tuple(cells[k] for k in order))
        if self.functionals is not None:
            object.__setattr__(self, "functionals", tuple(self.functionals[k] for k in order))

    @property
    def dim(self) -> int:
        return self.config.dim

    @property
    def points(self) -> tuple[Point, ...]:
        return self.config.points

    def cell_points(self, k: int) -> list[Point]:
        return [self.config.points[i] for i in self.cells[k]]

    @cached_property
    def cell_facets(self) -> tuple[list[frozenset[int]], ...]:
        return tuple([f for f, _, _ in facets(self.config.points, c)] for c in self.cells)

    @cached_property
    def cell_faces(self) -> tuple[dict[int, list[frozenset[int]]], ...]:
        return tuple(face_lattice(self.config.points, c) for c in self.cells)

    @cached_property
    def facet_map(self) -> dict[frozenset[int], list[int]]:
        """Each codimension-one face mapped to the cells containing it."""
        out: dict[frozenset[int], list[int]] = {}
        for k, fs in enumerate(self.cell_facets):
            for f in fs:
                out.setdefault(f, []).append(k)
        return out

    def faces(self, k: int) -> dict[frozenset[int], list[int]]:
        """Faces of dimension ``k`` mapped to the cells containing them."""
        out: dict[frozenset[int], list[int]] = {}
        for c, lattice in enumerate(self.cell_faces):
            for f in lattice.get(k, []):
                out.setdefault(f, []).append(c)
        return dict(sorted(out.items(), key=lambda t: sorted(t[0])))

    def interior_facets(self) -> list[tuple[frozenset[int], int, int]]:
        out = []
        for f, cs in sorted(self.facet_map.items(), key=lambda t: sorted(t[0])):
            if len(cs) == 2:
                out.append((f, cs[0], cs[1]))
            elif len(cs) > 2:
                raise GeometryError("face shared by more than two cells")
        return out

    def boundary_facets(self) -> list[tuple[frozenset[int], int]]:
        return [(f, cs[0]) for f, cs in sorted(self.facet_map.items(), key=lambda t: sorted(t[0])) if len(cs) == 1]

    def cell_volume(self, k: int) -> Fraction:
        return Fraction(normalized_volume(self.config.points, self.cells[k]), factorial(self.dim))

    def normalized_volumes(self) -> list[int]:
        return [normalized_volume(self.config.points, c) for c in self.cells]

    def used_points(self) -> set[int]:
        return {i for c in self.cells for i in c}

    def is_triangulation(self) -> bool:
        return all(len(c) == self.dim + 1 for c in self.cells)

    def to_json_obj(self) -> dict:
        obj = self.config.to_json_obj()
        obj["cells"] = [list(c) for c in self.cells]
        return obj

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "Subdivision":
        heights = obj.get("heights")
        config = PointConfiguration(tuple(tuple(p) for p in obj["points"]), None if heights is None else tuple(heights))
        if heights is not None and all(h is not None for h in config.heights):
            sub = regular_subdivision(config)
            if sub.cells == tuple(tuple(sorted(c)) for c in obj["cells"]):
                return sub
        return cls(config, tuple(tuple(c) for c in obj["cells"]))


def _integer_heights(heights: Sequence[Fraction | None]) -> tuple[list[int | None], int]:
    den = 1
    for h in heights:
        if h is not None:
            den = lcm(den, h.denominator)
    return [None if h is None else int(h * den) for h in heights], den


def regular_subdivision(config: PointConfiguration) -> Subdivision:
    """Subdivision induced by the upper hull of the lifted configuration.

    Points without a height are treated as lying below every facet.  Every
    ``(d+1)``-subset of lifted points spans a candidate hyperplane; it is an
    upper facet when its normal has positive last coordinate and no lifted
    point lies above it.
    """
    if config.heights is None:
        raise GeometryError("configuration has no heights")
    d = config.dim
    if config.affine_dim < d:
        raise GeometryError("configuration is not full-dimensional")
    idx = [i for i, h in enumerate(config.heights) if h is not None]
    ints, den = _integer_heights(config.heights)
    lifted = {i: config.points[i] + (ints[i],) for i in idx}
    if affine_rank([config.points[i] for i in idx]) < d:
        raise GeometryError("points carrying heights do not span the configuration")
    cells: list[frozenset[int]] = []
    normals: list[tuple[list[int], int]] = []
    for combo in itertools.combinations(idx, d + 1):
        if any(set(combo) <= c for c in cells):
            continue
        hp = hyperplane_through([lifted[i] for i in combo])
        if hp is None:
            continue
        n, c = hp
        if n[-1] == 0:
            continue
        if n[-1] < 0:
            n = [-x for x in n]
            c = -c
        tight = []
        ok = True
        for i in idx:
            v = sum(a * b for a, b in zip(n, lifted[i]))
            if v > c:
                ok = False
                break
            if v == c:
                tight.append(i)
        if not ok:
            continue
        cells.append(frozenset(tight))
        normals.append((n, c))
    functionals = []
    for n, c in normals:
        last = Fraction(n[-1])
        # lifted integer height H = (c - n[:d].p) / n_d, true height = H / den
        a = tuple(-Fraction(x) / last / den for x in n[:d])
        b = Fraction(c) / last / den
        functionals.append((a, b))
    return Subdivision(config, tuple(tuple(sorted(c)) for c in cells), tuple(functionals))


def newton_polytope(p: "TropicalPolynomial") -> PointConfiguration:
    """All lattice points of ``Newt(p)``; heights are the coefficients where present."""
    if not p.terms:
        raise GeometryError("the zero polynomial has no Newton polytope")
    pts = lattice_points(list(p.terms))
    heights = tuple(p.terms.get(q) for q in pts)
    return PointConfiguration(tuple(pts), heights)


def is_unimodular(sub: Subdivision) -> bool:
    return all(len(c) == sub.dim + 1 for c in sub.cells) and all(v == 1 for v in sub.normalized_volumes())


def cayley(P: PointConfiguration, Q: PointConfiguration) -> PointConfiguration:
    """``P x {0}`` together with ``Q x {1}`` in one dimension higher."""
    if P.dim != Q.dim:
        raise GeometryError("Cayley embedding needs configurations of equal dimension")
    pts = tuple(p + (0,) for p in P.points) + tuple(q + (1,) for q in Q.points)
    if P.heights is None and Q.heights is None:
        return PointConfiguration(pts)
    hp = P.heights or (None,) * len(P)
    hq = Q.heights or (None,) * len(Q)
    return PointConfiguration(pts, hp + hq)
