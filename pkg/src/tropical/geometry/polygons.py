"""Lattice polygons: normal forms, automorphisms, interior hulls, pushouts and
the catalogue of maximal polygons with a given number of interior points."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

from ..semiring import TropicalError

IntPoint = tuple[int, int]
AffineMap = tuple[tuple[tuple[int, int], tuple[int, int]], tuple[int, int]]


class BudgetExceeded(TropicalError):
    pass


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence]) -> list[tuple]:
    """Counterclockwise hull vertices (no collinear points), starting at the lexicographic minimum."""
    pts = sorted({tuple(p) for p in points})
    if len(pts) <= 2:
        return pts
    lower: list[tuple] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


class LatticePolygon:
    __slots__ = ("vertices", "__dict__")

    def __init__(self, points: Iterable[Sequence[int]]):
        hull = convex_hull((int(p[0]), int(p[1])) for p in points)
        if len(hull) < 3:
            raise TropicalError("a lattice polygon needs three non-collinear points")
        self.vertices: tuple[IntPoint, ...] = tuple(hull)

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolygon({list(self.vertices)})"

    @cached_property
    def edge_inequalities(self) -> list[tuple[int, int, int]]:
        """``(a, b, c)`` with primitive outward normal; the polygon is ``a x + b y <= c``."""
        out = []
        vs = self.vertices
        for p, q in zip(vs, vs[1:] + vs[:1]):
            dx, dy = q[0] - p[0], q[1] - p[1]
            g = gcd(dx, dy)
            a, b = dy // g, -dx // g
            out.append((a, b, a * p[0] + b * p[1]))
        return out

    def contains(self, q: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(a * q[0] + b * q[1] < c for a, b, c in self.edge_inequalities)
        return all(a * q[0] + b * q[1] <= c for a, b, c in self.edge_inequalities)

    @cached_property
    def lattice_points(self) -> tuple[IntPoint, ...]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return tuple(
            (x, y)
            for x in range(min(xs), max(xs) + 1)
            for y in range(min(ys), max(ys) + 1)
            if self.contains((x, y))
        )

    @cached_property
    def interior_points(self) -> tuple[IntPoint, ...]:
        return tuple(p for p in self.lattice_points if self.contains(p, strict=True))

    @property
    def genus(self) -> int:
        return len(self.interior_points)

    @property
    def boundary_count(self) -> int:
        return len(self.lattice_points) - len(self.interior_points)

    @property
    def area(self) -> Fraction:
        vs = self.vertices
        twice = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(vs, vs[1:] + vs[:1]))
        return Fraction(twice, 2)

    def is_hyperelliptic(self) -> bool:
        ip = self.interior_points
        if len(ip) < 2:
            return len(ip) == 1
        return all(_cross(ip[0], ip[1], p) == 0 for p in ip)

    def transform(self, M, t=(0, 0)) -> "LatticePolygon":
        return LatticePolygon(apply_map((M, t), p) for p in self.vertices)

    def to_json_obj(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]


def apply_map(f: AffineMap, p: Sequence) -> tuple:
    (m00, m01), (m10, m11) = f[0]
    return (m00 * p[0] + m01 * p[1] + f[1][0], m10 * p[0] + m11 * p[1] + f[1][1])


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f`` after ``g``."""
    (a, b), (c, d) = f[0]
    (e, f_), (g_, h) = g[0]
    M = ((a * e + b * g_, a * f_ + b * h), (c * e + d * g_, c * f_ + d * h))
    t = apply_map((f[0], f[1]), g[1])
    return (M, t)


def invert(f: AffineMap) -> AffineMap:
    (a, b), (c, d) = f[0]
    det = a * d - b * c
    if det not in (1, -1):
        raise TropicalError("map is not unimodular")
    M = ((d * det, -b * det), (-c * det, a * det))
    t = apply_map((M, (0, 0)), f[1])
    return (M, (-t[0], -t[1]))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _normalizing_maps(P: LatticePolygon) -> list[AffineMap]:
    """One unimodular map per (vertex, orientation) pair putting ``P`` in a standard frame.

    The chosen vertex goes to the origin, its outgoing edge to the positive
    x-axis, the polygon above that axis, and the preceding vertex into the
    strip ``0 <= x < y`` by a shear.
    """
    maps = []
    vs = list(P.vertices)
    n = len(vs)
    for orientation in (1, -1):
        order = vs if orientation == 1 else vs[::-1]
        for i in range(n):
            v0, v1, vp = order[i], order[(i + 1) % n], order[i - 1]
            dx, dy = v1[0] - v0[0], v1[1] - v0[1]
            g = gcd(dx, dy)
            a, b = dx // g, dy // g
            _, x, y = _ext_gcd(a, b)
            # rows (x, y) and (-b, a): sends (a, b) to (1, 0), det = 1
            M = ((x, y), (-b, a))
            if orientation == -1:
                M = (M[0], (-M[1][0], -M[1][1]))
            t = apply_map((M, (0, 0)), v0)
            f = (M, (-t[0], -t[1]))
            px, py = apply_map(f, vp)
            k = (px % py - px) // py
            S = ((1, k), (0, 1))
            maps.append(compose((S, (0, 0)), f))
    return maps


def _encode(P: LatticePolygon, f: AffineMap) -> tuple:
    return tuple(sorted(apply_map(f, v) for v in P.vertices))


def polygon_normal_form(P: LatticePolygon) -> LatticePolygon:
    return LatticePolygon(min(_encode(P, f) for f in _normalizing_maps(P)))


def normal_form_key(P: LatticePolygon) -> tuple:
    return min(_encode(P, f) for f in _normalizing_maps(P))


def equivalent(P: LatticePolygon, Q: LatticePolygon) -> bool:
    return normal_form_key(P) == normal_form_key(Q)


def lattice_automorphisms(P: LatticePolygon) -> list[AffineMap]:
    """All unimodular affine maps sending ``P`` onto itself."""
    maps = _normalizing_maps(P)
    encs = [_encode(P, f) for f in maps]
    ref = maps[0]
    out = set()
    for f, e in zip(maps, encs):
        if e == encs[0]:
            out.add(compose(invert(f), ref))
    return sorted(out)


def point_permutations(P: LatticePolygon, points: Sequence[IntPoint] | None = None) -> list[tuple[int, ...]]:
    """Automorphisms of ``P`` as permutations of ``points`` (default: its lattice points)."""
    points = list(P.lattice_points if points is None else points)
    index = {p: i for i, p in enumerate(points)}
    return [tuple(index[apply_map(f, p)] for p in points) for f in lattice_automorphisms(P)]


@dataclass(frozen=True)
class InteriorHull:
    """Convex hull of the interior lattice points, tagged by dimension (-1 for empty)."""

    dim: int
    points: tuple[IntPoint, ...]

    @property
    def polygon(self) -> LatticePolygon:
        if self.dim != 2:
            raise TropicalError("interior hull is not two-dimensional")
        return LatticePolygon(self.points)


def interior_hull(P: LatticePolygon) -> InteriorHull:
    ip = P.interior_points
    if not ip:
        return InteriorHull(-1, ())
    hull = convex_hull(ip)
    if len(hull) == 1:
        return InteriorHull(0, tuple(hull))
    if len(hull) == 2:
        return InteriorHull(1, tuple(hull))
    return InteriorHull(2, tuple(hull))


def _line_intersection(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return (Fraction(c1 * b2 - c2 * b1, det), Fraction(a1 * c2 - a2 * c1, det))


def pushout(Q: LatticePolygon) -> LatticePolygon | None:
    """Relax every edge ``a x + b y <= c`` to ``<= c + 1``; ``None`` if a vertex is not integral."""
    lines = [(a, b, c + 1) for a, b, c in Q.edge_inequalities]
    cands = []
    for l1, l2 in itertools.combinations(lines, 2):
        p = _line_intersection(l1, l2)
        if p is None:
            continue
        if all(a * p[0] + b * p[1] <= c for a, b, c in lines):
            cands.append(p)
    hull = convex_hull(cands)
    if len(hull) < 3 or any(x.denominator != 1 for p in hull for x in p):
        return None
    return LatticePolygon((int(p[0]), int(p[1])) for p in hull)


# ------------------------------------------------------------ maximal polygons

def _polygons_with_points(n: int) -> list[LatticePolygon]:
    """Two-dimensional lattice polygons with exactly ``n`` lattice points, up to equivalence."""
    level = {normal_form_key(LatticePolygon([(0, 0), (1, 0), (0, 1)])): LatticePolygon([(0, 0), (1, 0), (0, 1)])}
    for size in range(4, n + 1):
        nxt = {}
        for Q in level.values():
            Q = polygon_normal_form(Q)
            xs = [v[0] for v in Q.vertices]
            ys = [v[1] for v in Q.vertices]
            r = 2 * size + 2
            for x in range(min(xs) - r, max(xs) + r + 1):
                for y in range(min(ys) - r, max(ys) + r + 1):
                    if Q.contains((x, y)):
                        continue
                    R = LatticePolygon(Q.vertices + ((x, y),))
                    if len(R.lattice_points) != size:
                        continue
                    key = normal_form_key(R)
                    if key not in nxt:
                        nxt[key] = LatticePolygon(key)
        level = nxt
    if n == 3:
        return list(level.values())
    return [level[k] for k in sorted(level)]


def nonhyperelliptic_maximal_polygons(g: int) -> list[LatticePolygon]:
    """Pushouts of the ``g``-point polygons whose interior points are exactly the original ones."""
    if g < 3:
        return []
    out = {}
    for Q in _polygons_with_points(g):
        P = pushout(Q)
        if P is None:
            continue
        if set(P.interior_points) != set(Q.lattice_points):
            continue
        key = normal_form_key(P)
        out.setdefault(key, LatticePolygon(key))
    return [out[k] for k in sorted(out)]


def _is_maximal(P: LatticePolygon, candidates: Iterable[IntPoint]) -> bool:
    interior = set(P.interior_points)
    for q in candidates:
        if P.contains(q):
            continue
        R = LatticePolygon(P.vertices + (q,))
        if set(R.interior_points) == interior:
            return False
    return True


def hyperelliptic_maximal_polygons(g: int) -> list[LatticePolygon]:
    """Maximal polygons whose ``g >= 2`` interior points are collinear.

    Such a polygon is equivalent to one inside the strip ``0 <= y <= 2`` with
    interior points ``(1, 1), ..., (g, 1)``; a shear fixing the middle row
    puts the left end of the bottom row at ``x = 0``.
    """
    if g < 2:
        return []
    R = 2 * g + 4
    interior = {(i, 1) for i in range(1, g + 1)}
    # nearby extensions first: they reject non-maximal polygons quickly
    cand_pts = sorted(
        ((x, y) for y in range(-2, 5) for x in range(-3 * R, 3 * R + 1)),
        key=lambda p: (abs(2 * p[0] - g - 1) + 2 * abs(p[1] - 1), p),
    )
    out = {}
    a0 = 0
    for b0 in range(a0, R + 1):
        for a2 in range(-R, R + 1):
            for b2 in range(a2, 2 * R + 1):
                for left in (False, True):
                    if not left and a0 + a2 not in (0, 1):
                        continue
                    for right in (False, True):
                        if not right and b0 + b2 not in (2 * g + 1, 2 * g + 2):
                            continue
                        pts = [(a0, 0), (b0, 0), (a2, 2), (b2, 2)]
                        if left:
                            pts.append((0, 1))
                        if right:
                            pts.append((g + 1, 1))
                        P = LatticePolygon(pts)
                        if set(P.interior_points) != interior:
                            continue
                        key = normal_form_key(P)
                        if key in out:
                            continue
                        if _is_maximal(P, cand_pts):
                            out[key] = LatticePolygon(key)
    return [out[k] for k in sorted(out)]


def _genus_one_maximal() -> list[LatticePolygon]:
    seeds = [LatticePolygon([(-1, -1), (1, 0), (0, 1)]), LatticePolygon([(1, 0), (0, 1), (-1, 0), (0, -1)])]
    box = [(x, y) for x in range(-4, 5) for y in range(-4, 5)]
    seen = set()
    out = {}
    stack = list(seeds)
    while stack:
        P = stack.pop()
        key = normal_form_key(P)
        if key in seen:
            continue
        seen.add(key)
        grown = False
        for q in box:
            if P.contains(q):
                continue
            R = LatticePolygon(P.vertices + (q,))
            if R.interior_points == ((0, 0),):
                grown = True
                stack.append(R)
        if not grown:
            out[key] = LatticePolygon(key)
    return [out[k] for k in sorted(out)]


@lru_cache(maxsize=None)
def _maximal_cached(g: int) -> tuple[LatticePolygon, ...]:
    if g == 1:
        return tuple(_genus_one_maximal())
    return tuple(nonhyperelliptic_maximal_polygons(g) + hyperelliptic_maximal_polygons(g))


def enumerate_maximal_polygons(g: int, max_genus: int = 6) -> list[LatticePolygon]:
    """One representative per equivalence class of maximal polygons with ``g`` interior points.

    Nonhyperelliptic classes come first, then hyperelliptic ones.
    """
    if g < 1:
        raise TropicalError("genus must be positive")
    if g > max_genus:
        raise BudgetExceeded(f"genus {g} exceeds the configured bound {max_genus}")
    return list(_maximal_cached(g))
