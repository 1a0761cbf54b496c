import random
from fractions import Fraction

import pytest

from worked_examples import LINES, PLANES, QUADRIC_PAIR
from tropical.geometry.subdivision import GeometryError
from tropical.hypersurface import build_curve
from tropical.intersection import (
    bezout_sum,
    detect_tangencies,
    intersection_components,
    mixed_cell_intersection,
    space_curve,
    space_curve_counts,
    stable_intersection,
    transversal_multiplicity,
)
from tropical.polynomial import TropicalPolynomial, parse, vanishes_at

F = Fraction


def located(points):
    return sorted((p.location, p.multiplicity) for p in points)


def test_transversal_multiplicities():
    assert transversal_multiplicity((1, 0), 1, (0, 1), 1) == 1
    assert transversal_multiplicity((1, 1), 1, (1, -1), 1) == 2
    assert transversal_multiplicity((1, 0), 2, (1, 2), 1) == 4


def test_two_lines():
    assert located(stable_intersection(*(parse(s, 2) for s in LINES))) == [((F(-1), F(0)), 1)]
    assert bezout_sum(*(parse(s, 2) for s in LINES)) == 1


def test_quadric_pair():
    f, g = (parse(s, 2) for s in QUADRIC_PAIR)
    expected = [((F(-1), F(1)), 1), ((F(-1, 2), F(-1, 2)), 2), ((F(1), F(-1, 2)), 1)]
    assert located(stable_intersection(f, g)) == expected
    assert located(mixed_cell_intersection(f, g)) == expected
    assert bezout_sum(f, g) == 4


def test_line_with_itself():
    line = parse("x (+) y (+) 0", 2)
    assert located(stable_intersection(line, line)) == [((F(0), F(0)), 1)]
    (comp,) = intersection_components(build_curve(line), build_curve(line))
    assert not comp.is_point


def test_result_does_not_depend_on_the_perturbation():
    f, g = (parse(s, 2) for s in QUADRIC_PAIR)
    base = located(stable_intersection(f, g))
    for v in [(1, 7), (-3, 11), (5, -2)]:
        assert located(stable_intersection(f, g, direction=v)) == base


def test_tangencies():
    f, g = (parse(s, 2) for s in QUADRIC_PAIR)
    comps = detect_tangencies(f, g)
    assert sorted(c.multiplicity for c in comps) == [1, 1, 2]
    assert [c.tangent for c in comps if c.multiplicity == 2] == [True]
    (comp,) = detect_tangencies(*(parse(s, 2) for s in LINES))
    assert comp.multiplicity == 1 and not comp.tangent
    line = parse("x (+) y (+) 0", 2)
    (comp,) = detect_tangencies(line, line)
    assert comp.multiplicity == 1 and not comp.tangent


def random_dense(rng, d):
    return TropicalPolynomial(
        {(i, j): F(rng.randint(-12, 12), rng.randint(1, 2)) for i in range(d + 1) for j in range(d + 1 - i)}, 2
    )


@pytest.mark.parametrize("seed", range(30))
def test_bezout_and_membership(seed):
    rng = random.Random(seed)
    d, e = rng.randint(1, 3), rng.randint(1, 3)
    f, g = random_dense(rng, d), random_dense(rng, e)
    pts = stable_intersection(f, g)
    assert sum(p.multiplicity for p in pts) == d * e
    assert all(vanishes_at(f, p.location) and vanishes_at(g, p.location) for p in pts)
    assert located(pts) == located(mixed_cell_intersection(f, g))


def test_line_and_conic():
    assert bezout_sum(parse("x (+) 2(*)y (+) -1", 2), parse("x^2 (+) 1(*)xy (+) y^2 (+) 3(*)x (+) y (+) 0", 2)) == 2


def test_tropical_line_in_space():
    C = space_curve(*(parse(s, 3) for s in PLANES))
    assert sorted(C.complex.vertices) == [(2, -1, -1), (2, 1, 1)]
    assert C.counts() == {"vertices": 2, "edges": 1, "rays": 4, "genus": 0}
    assert C.smooth and len(C.mixed_cells) == 2
    for v in C.complex.vertices:
        for s in PLANES:
            assert vanishes_at(parse(s, 3), v)


def test_space_curve_count_formulas():
    assert space_curve_counts(1, 1) == {"vertices": 2, "edges": 1, "rays": 4, "genus": 0}
    assert space_curve_counts(2, 3) == {"vertices": 30, "edges": 33, "rays": 24, "genus": 4}


def test_space_curve_needs_solids():
    with pytest.raises(GeometryError):
        space_curve(parse("x (+) y (+) 0", 3), parse(PLANES[0], 3))
