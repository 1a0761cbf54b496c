import json

import pytest

from test_geometry import count_triangulations_by_front
from tropical.census import CensusRecord, dual_skeleton, troplanar_census
from tropical.geometry.polygons import LatticePolygon
from tropical.skeleton import are_isomorphic, canonical_certificate, dumbbell_graph, theta_graph


@pytest.fixture(scope="module")
def genus_two():
    return troplanar_census(2)


def test_genus_two_classes(genus_two):
    assert genus_two.complete and genus_two.class_count == 2
    graphs = [c.graph for c in genus_two.classes]
    assert any(are_isomorphic(G, theta_graph()) for G in graphs)
    assert any(are_isomorphic(G, dumbbell_graph()) for G in graphs)


def test_genus_two_inventory(genus_two):
    assert [(p.total, p.orbits) for p in genus_two.polygons] == [(454, 227), (734, 375), (852, 231), (156, 83)]
    # every triangulation of a hyperelliptic genus-2 polygon turns out regular
    assert all(p.regular_total == p.total for p in genus_two.polygons)


def test_triangulation_count_against_backtracking():
    assert count_triangulations_by_front(LatticePolygon([(0, 0), (6, 0), (0, 2)])) == 156


def test_representatives_are_consistent(genus_two):
    for c in genus_two.classes:
        G = c.graph
        assert G.genus() == 2 and G.is_trivalent() and G.is_connected() and not c.sprawling
        # the metric skeleton of the drawn curve has the recorded combinatorial type
        assert canonical_certificate(dual_skeleton(c.points, c.triangulation)).decode() == c.certificate
        assert all(length > 0 for _, _, length in G.edges)


def test_table_and_json(genus_two):
    text = genus_two.table()
    assert text.startswith("genus 2") and text.endswith("classes: 2")
    obj = json.loads(genus_two.dumps())
    assert obj["genus"] == 2 and obj["complete"] and len(obj["classes"]) == 2
    assert isinstance(genus_two, CensusRecord)


def test_budget_gives_partial_record():
    rec = troplanar_census(3, budget=0.01)
    assert not rec.complete
    assert any(not p.complete for p in rec.polygons)


def test_genus_must_be_at_least_two():
    with pytest.raises(ValueError):
        troplanar_census(1)


def test_dual_skeleton_of_a_cubic():
    from tropical.geometry.triangulations import placing_triangulation

    points = LatticePolygon([(0, 0), (3, 0), (0, 3)]).lattice_points
    G = dual_skeleton(points, placing_triangulation(points))
    assert G.genus() == 1
