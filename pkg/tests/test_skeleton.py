import random
from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest

from worked_examples import TWO_LOOPS
from tropical.geometry.polygons import LatticePolygon
from tropical.geometry.regularity import triangulation_witness
from tropical.geometry.triangulations import triangulation_orbits
from tropical.hypersurface import build_curve, curve_from_triangulation
from tropical.polynomial import TropicalPolynomial, parse
from tropical.semiring import TropicalError
from tropical.skeleton import (
    MetricGraph,
    are_isomorphic,
    canonical_certificate,
    dumbbell_graph,
    genus3_trivalent_graphs,
    lattice_length,
    skeletonize,
    theta_graph,
)


def brute_isomorphic(G: MetricGraph, H: MetricGraph, with_lengths: bool) -> bool:
    if G.n != H.n or len(G.edges) != len(H.edges):
        return False

    def key(edges):
        return Counter((min(u, v), max(u, v)) + ((l,) if with_lengths else ()) for u, v, l in edges)

    target = key(H.edges)
    return any(key([(p[u], p[v], l) for u, v, l in G.edges]) == target for p in permutations(range(G.n)))


def random_graph(rng, n):
    return MetricGraph(n, tuple((rng.randrange(n), rng.randrange(n), rng.randint(1, 2)) for _ in range(rng.randint(n - 1, n + 3))))


def test_lattice_lengths():
    assert lattice_length((0, 0), (1, 0)) == 1
    assert lattice_length((0, 0), (3, 6)) == 3
    assert lattice_length((0, 0), (Fraction(1, 2), Fraction(1, 2))) == Fraction(1, 2)


def test_named_graphs():
    theta, bell = theta_graph(), dumbbell_graph()
    assert theta.genus() == bell.genus() == 2
    assert theta.is_trivalent() and theta.is_connected() and theta.bridges() == []
    assert bell.is_trivalent() and len(bell.bridges()) == 1
    k33 = MetricGraph(6, tuple((a, b) for a in range(3) for b in range(3, 6)))
    assert k33.genus() == 4


def test_lollipop_is_sprawling():
    graphs = genus3_trivalent_graphs()
    lollipop = graphs.pop("lollipop")
    assert lollipop.is_trivalent() and len(lollipop.bridges()) == 3
    assert lollipop.is_sprawling()
    assert not any(G.is_sprawling() for G in graphs.values())
    assert not theta_graph().is_sprawling()


def test_more_sprawling_graphs():
    # a vertex joined to three pendant blobs of genus 1, 1 and 2
    G = MetricGraph(6, ((0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 4), (3, 5), (4, 5), (4, 5)))
    assert G.is_trivalent() and G.genus() == 4 and G.is_sprawling()


def test_genus_three_certificates_are_distinct():
    certs = {canonical_certificate(G) for G in genus3_trivalent_graphs().values()}
    assert len(certs) == 5
    assert all(G.genus() == 3 for G in genus3_trivalent_graphs().values())


def test_relabelled_theta_has_same_certificate():
    G = theta_graph((1, 2, 3))
    assert canonical_certificate(G, True) == canonical_certificate(G.relabel((1, 0)), True)
    assert canonical_certificate(G) != canonical_certificate(dumbbell_graph())


@pytest.mark.parametrize("seed", range(60))
def test_certificates_match_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    G = random_graph(rng, n)
    H = random_graph(rng, n) if rng.random() < 0.5 else G.relabel(rng.sample(range(n), n))
    for with_lengths in (False, True):
        same = canonical_certificate(G, with_lengths) == canonical_certificate(H, with_lengths)
        assert same == brute_isomorphic(G, H, with_lengths)


def test_eight_vertex_cubic_graphs():
    cube = MetricGraph(8, tuple((a, a ^ (1 << k)) for a in range(8) for k in range(3) if a < a ^ (1 << k)))
    moebius = MetricGraph(8, tuple((i, (i + 1) % 8) for i in range(8)) + tuple((i, i + 4) for i in range(4)))
    assert are_isomorphic(cube, cube.relabel((3, 1, 4, 0, 7, 2, 6, 5)))
    assert not are_isomorphic(cube, moebius)
    assert brute_isomorphic(cube, cube.relabel((3, 1, 4, 0, 7, 2, 6, 5)), False)


def test_metric_graph_validation_and_json():
    with pytest.raises(TropicalError):
        MetricGraph(2, ((0, 2, 1),))
    G = dumbbell_graph(12, 15, 1)
    assert MetricGraph.from_json_obj(G.to_json_obj()) == G
    assert G.total_length() == 28
    assert not MetricGraph(2, ()).is_connected()


def test_two_loop_curve():
    G = skeletonize(build_curve(parse(TWO_LOOPS, 2)))
    assert are_isomorphic(G, dumbbell_graph(12, 15, 1), with_lengths=True)


def test_line_skeleton_is_empty():
    assert skeletonize(build_curve(parse("x (+) y (+) 0", 2))).n == 0


def test_every_smooth_cubic_has_genus_one():
    points, orbits = triangulation_orbits(LatticePolygon([(0, 0), (3, 0), (0, 3)]))
    for o in orbits:
        res = triangulation_witness(points, o.representative)
        G = skeletonize(curve_from_triangulation(points, o.representative, res.heights))
        assert G.genus() == 1 and G.is_connected()


def test_lengths_survive_unimodular_changes_of_coordinates():
    p = parse(TWO_LOOPS, 2)
    M, t = ((1, 1), (0, 1)), (2, 0)
    moved = {
        (M[0][0] * a + M[0][1] * b + t[0], M[1][0] * a + M[1][1] * b + t[1]): c for (a, b), c in p.terms.items()
    }
    G = skeletonize(build_curve(p))
    H = skeletonize(build_curve(TropicalPolynomial(moved, 2)))
    assert canonical_certificate(G, True) == canonical_certificate(H, True)


def test_skeleton_does_not_depend_on_the_witness():
    points, orbits = triangulation_orbits(LatticePolygon([(0, 0), (4, 0), (0, 4)]))
    rng = random.Random(4)
    for o in rng.sample(orbits, 25):
        res = triangulation_witness(points, o.representative)
        if not res.regular:
            continue
        # a positive multiple plus an affine function induces the same triangulation
        other = [3 * h + 2 * x - 5 * y + 7 for h, (x, y) in zip(res.heights, points)]
        a = skeletonize(curve_from_triangulation(points, o.representative, res.heights))
        b = skeletonize(curve_from_triangulation(points, o.representative, other))
        assert canonical_certificate(a) == canonical_certificate(b)
