from fractions import Fraction
from itertools import combinations, product

import pytest

from worked_examples import ALMOST_CUBE, QUADRIC
from tropical.geometry.linalg import det, primitive, rank, solve
from tropical.geometry.polygons import (
    BudgetExceeded,
    LatticePolygon,
    apply_map,
    enumerate_maximal_polygons,
    equivalent,
    interior_hull,
    lattice_automorphisms,
    nonhyperelliptic_maximal_polygons,
    polygon_normal_form,
    pushout,
)
from tropical.geometry.regularity import is_regular, triangulation_witness
from tropical.geometry.subdivision import (
    GeometryError,
    PointConfiguration,
    Subdivision,
    cayley,
    is_unimodular,
    newton_polytope,
    regular_subdivision,
)
from tropical.geometry.triangulations import triangulation_orbits
from tropical.polynomial import parse

T = lambda d: LatticePolygon([(0, 0), (d, 0), (0, d)])  # noqa: E731


# ---------------------------------------------------------------- oracles

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _overlap(s, t):
    """Open unit triangles intersect iff no edge line separates them."""
    for tri, other in ((s, t), (t, s)):
        for i in range(3):
            a, b, c = tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]
            side = _cross(a, b, c)
            if all(_cross(a, b, q) * side <= 0 for q in other):
                return False
    return True


def count_triangulations_by_front(P: LatticePolygon) -> int:
    """Backtracking over unit triangles glued along open edges."""
    pts = list(P.lattice_points)
    units = [t for t in combinations(pts, 3) if abs(_cross(*t)) == 1]
    boundary = set()
    for a, b in combinations(pts, 2):
        if all(_cross(a, b, q) >= 0 for q in pts) or all(_cross(a, b, q) <= 0 for q in pts):
            boundary.add(frozenset((a, b)))
    need = int(2 * P.area)

    def edges(t):
        return [frozenset(e) for e in combinations(t, 2)]

    def search(chosen, open_edges):
        if len(chosen) == need:
            return 1
        e = min(open_edges, key=sorted)
        a, b = sorted(e)
        used_side = next(_cross(a, b, q) for t in chosen if e in edges(t) for q in t if q not in e)
        total = 0
        for t in units:
            if e not in edges(t):
                continue
            c = next(q for q in t if q not in e)
            if _cross(a, b, c) * used_side >= 0 or any(_overlap(t, s) for s in chosen):
                continue
            nxt = set(open_edges)
            for f in edges(t):
                if f in nxt:
                    nxt.discard(f)
                elif f not in boundary:
                    nxt.add(f)
            total += search(chosen + [t], nxt)
        return total

    # seed with every unit triangle at the lexicographically first boundary edge
    e0 = min(boundary, key=sorted)
    total = 0
    for t in units:
        if e0 in edges(t):
            open_edges = {f for f in edges(t) if f not in boundary}
            total += search([t], open_edges) if open_edges or need > 1 else 1
    return total


def brute_automorphism_count(P: LatticePolygon) -> int:
    verts = set(P.vertices)
    count = 0
    for m in product(range(-3, 4), repeat=4):
        M = ((m[0], m[1]), (m[2], m[3]))
        if abs(m[0] * m[3] - m[1] * m[2]) != 1:
            continue
        v0 = P.vertices[0]
        image0 = (m[0] * v0[0] + m[1] * v0[1], m[2] * v0[0] + m[3] * v0[1])
        for target in verts:
            t = (target[0] - image0[0], target[1] - image0[1])
            if {apply_map((M, t), v) for v in verts} == verts:
                count += 1
    return count


# ---------------------------------------------------------------- linear algebra

def test_determinant_and_rank():
    assert det([[2, 1], [1, 1]]) == 1
    assert det([[Fraction(1, 2), 0], [0, 4]]) == 2
    assert rank([(1, 2, 3), (2, 4, 6), (0, 1, 0)]) == 2


def test_solve_and_primitive():
    assert solve([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve([[1, 1], [2, 2]], [1, 2]) is None
    assert primitive((3, 6)) == (1, 2)
    assert primitive((-4, 0, 2)) == (-2, 0, 1)


# ---------------------------------------------------------------- subdivisions

def test_newton_polytope_of_quadric():
    cfg = newton_polytope(parse(QUADRIC, 2))
    assert sorted(cfg.points) == sorted([(2, 0), (0, 2), (1, 1), (1, 0), (0, 1), (0, 0)])


def test_newton_polytope_marks_missing_points():
    cfg = newton_polytope(parse("x^2 (+) y^2 (+) 0", 2))
    assert len(cfg.points) == 6
    assert sum(h is not None for h in cfg.heights) == 3


def test_quadric_subdivision_is_unimodular():
    sub = regular_subdivision(newton_polytope(parse(QUADRIC, 2)))
    assert len(sub.cells) == 4 and is_unimodular(sub)
    assert is_regular(sub).regular


def test_equal_heights_give_one_cell():
    cfg = PointConfiguration(T(2).lattice_points, (0,) * 6)
    sub = regular_subdivision(cfg)
    assert len(sub.cells) == 1 and not is_unimodular(sub)


def test_almost_cube_subdivision():
    sub = regular_subdivision(newton_polytope(parse(ALMOST_CUBE, 3)))
    pts = sub.points
    cells = sorted(sorted(pts[i] for i in c) for c in sub.cells)
    assert cells == [
        [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)],
        [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)],
        [(0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)],
    ]
    assert sorted(sub.normalized_volumes()) == [1, 1, 2]
    assert not is_unimodular(sub)


@pytest.mark.parametrize("seed", range(15))
def test_subdivision_volumes_add_up(seed):
    import random

    rng = random.Random(seed)
    pts = T(3).lattice_points
    sub = regular_subdivision(PointConfiguration(pts, [rng.randint(-5, 5) for _ in pts]))
    assert sum(sub.normalized_volumes()) == 9
    assert is_regular(sub).regular


def test_lower_dimensional_configuration_rejected():
    with pytest.raises(GeometryError):
        from tropical.hypersurface import build_curve

        build_curve(parse("x (+) x^2 (+) 0", 2))


def test_cayley_of_two_tetrahedra():
    tet = PointConfiguration(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))
    cfg = cayley(tet, tet)
    assert sorted(cfg.points) == sorted(
        [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]
    )


def test_cayley_of_triangle_with_itself_is_a_prism():
    tri = PointConfiguration(((0, 0), (1, 0), (0, 1)))
    cfg = cayley(tri, tri)
    assert len(cfg.points) == 6 and cfg.affine_dim == 3


def test_subdivision_json_round_trip():
    sub = regular_subdivision(newton_polytope(parse(QUADRIC, 2)))
    assert Subdivision.from_json_obj(sub.to_json_obj()).cells == sub.cells


# ---------------------------------------------------------------- triangulations

@pytest.mark.parametrize(
    "poly",
    [
        T(1),
        T(2),
        T(3),
        LatticePolygon([(0, 0), (1, 0), (1, 1), (0, 1)]),
        LatticePolygon([(0, 0), (2, 0), (2, 1), (0, 1)]),
        LatticePolygon([(0, 0), (2, 0), (2, 2), (0, 2)]),
        LatticePolygon([(0, 0), (3, 0), (0, 2)]),
    ],
)
def test_flip_search_matches_front_backtracking(poly):
    points, orbits = triangulation_orbits(poly, up_to_symmetry=False)
    assert len(orbits) == count_triangulations_by_front(poly)
    _, sym = triangulation_orbits(poly, up_to_symmetry=True)
    assert sum(o.size for o in sym) == len(orbits)


def test_small_triangulation_counts():
    assert len(triangulation_orbits(T(1))[1]) == 1
    assert len(triangulation_orbits(T(3))[1]) == 18
    assert len(triangulation_orbits(T(3), up_to_symmetry=False)[1]) == 79


def test_triangulations_are_unimodular_and_cover():
    points, orbits = triangulation_orbits(T(3), up_to_symmetry=False)
    for o in orbits:
        used = {v for t in o.representative for v in t}
        assert used == set(range(len(points)))
        assert all(abs(det([[points[b][k] - points[a][k] for k in range(2)] for b in (t[1], t[2])])) == 1
                   for t in o.representative for a in (t[0],))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_strip_triangulations_are_all_regular(n):
    points, orbits = triangulation_orbits(LatticePolygon([(0, 0), (n, 0), (n, 1), (0, 1)]), up_to_symmetry=False)
    assert all(triangulation_witness(points, o.representative).regular for o in orbits)


def test_witness_heights_reproduce_the_triangulation():
    points, orbits = triangulation_orbits(T(3))
    for o in orbits:
        res = triangulation_witness(points, o.representative)
        sub = regular_subdivision(PointConfiguration(points, res.heights))
        assert sub.cells == tuple(sorted(tuple(sorted(t)) for t in o.representative))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        triangulation_orbits(T(4), budget=0.0)


# ---------------------------------------------------------------- polygons

@pytest.mark.parametrize(
    "poly, order",
    [
        (T(1), 6),
        (T(3), 6),
        (LatticePolygon([(0, 0), (1, 0), (1, 1), (0, 1)]), 8),
        (LatticePolygon([(0, 0), (3, 0), (1, 2), (0, 1)]), 1),
    ],
)
def test_automorphism_group_orders(poly, order):
    assert len(lattice_automorphisms(poly)) == order == brute_automorphism_count(poly)


def test_normal_forms():
    assert equivalent(T(1), LatticePolygon([(5, 5), (6, 5), (6, 6)]))
    assert not equivalent(T(2), LatticePolygon([(0, 0), (1, 0), (1, 1), (0, 1)]))
    P = LatticePolygon([(0, 0), (2, 1), (1, 2)])
    Q = LatticePolygon([(0, 0), (-2, 1), (-1, 2)])
    assert polygon_normal_form(P) == polygon_normal_form(Q)


def test_interior_hulls():
    assert sorted(interior_hull(T(4)).points) == [(1, 1), (1, 2), (2, 1)]
    assert interior_hull(T(2)).dim == -1
    assert interior_hull(LatticePolygon([(0, 0), (2, 0), (2, 2), (0, 2)])).points == ((1, 1),)


def test_pushouts():
    assert equivalent(pushout(T(1)), T(4))
    assert equivalent(pushout(LatticePolygon([(1, 1), (2, 1), (1, 2)])), T(4))
    # relaxed hypotenuse x + 3y <= 4 meets x = -1 at y = 5/3
    assert pushout(LatticePolygon([(0, 0), (3, 0), (0, 1)])) is None


def _is_maximal_by_search(P: LatticePolygon) -> bool:
    inner = set(P.interior_points)
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    for q in product(range(min(xs) - 3, max(xs) + 4), range(min(ys) - 3, max(ys) + 4)):
        if P.contains(q):
            continue
        if set(LatticePolygon(P.vertices + (q,)).interior_points) == inner:
            return False
    return True


@pytest.mark.parametrize("g, count", [(1, 3), (2, 4), (3, 6), (4, 9)])
def test_maximal_polygon_counts(g, count):
    polys = enumerate_maximal_polygons(g)
    assert len(polys) == count
    assert all(P.genus == g and _is_maximal_by_search(P) for P in polys)
    assert all(not equivalent(P, Q) for P, Q in combinations(polys, 2))


def test_nonhyperelliptic_maximal_polygons():
    assert [equivalent(P, T(4)) for P in nonhyperelliptic_maximal_polygons(3)] == [True]
    assert len(nonhyperelliptic_maximal_polygons(4)) == 3
    for g in (3, 4):
        for P in nonhyperelliptic_maximal_polygons(g):
            assert equivalent(pushout(interior_hull(P).polygon), P)


def test_genus_bound():
    with pytest.raises(BudgetExceeded):
        enumerate_maximal_polygons(8)
