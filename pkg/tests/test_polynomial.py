import random
from fractions import Fraction

import pytest

from tropical.polynomial import (
    ParseError,
    TropicalPolynomial,
    evaluate,
    expand_factorization,
    factor_univariate,
    format_polynomial,
    function_equal,
    parse,
    roots_univariate,
    trop_poly_mul,
    vanishes_at,
)
from tropical.semiring import NEG_INF, TropicalNumber


def brute_max(p: TropicalPolynomial, w):
    vals = {a: c + sum(ai * wi for ai, wi in zip(a, w)) for a, c in p.terms.items()}
    top = max(vals.values())
    return top, frozenset(a for a, v in vals.items() if v == top)


def test_parse_tropical_notation():
    p = parse("x^2 (+) 2(*)x (+) -1", 1)
    assert dict(p.terms) == {(2,): 0, (1,): 2, (0,): -1}


def test_parse_classical_max_notation():
    assert parse("max(2x, x+2, -1)", 1) == parse("x^2 (+) 2(*)x (+) -1", 1)


def test_parse_constant_and_round_trip():
    assert dict(parse("0", 2).terms) == {(0, 0): 0}
    p = parse("1/2(*)x^2y (+) -3(*)y (+) 0", 2)
    assert parse(format_polynomial(p), 2) == p
    assert TropicalPolynomial.from_json_obj(p.to_json_obj()) == p


@pytest.mark.parametrize("text", ["x^ (+) 1", "x (+)", "2(*)(*)x", "x(*)", "max(2x, "])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, 1)


def test_evaluate_examples():
    value, arg = evaluate(parse("x (+) y (+) 0", 2), (0, 0))
    assert value == 0 and len(arg) == 3
    value, arg = evaluate(parse("x^2 (+) 2(*)x (+) -1", 1), (-3,))
    assert value == -1 and arg == {(1,), (0,)}
    assert evaluate(parse("7", 2), (5, 1)) == (7, frozenset({(0, 0)}))


def test_vanishing():
    line = parse("x (+) y (+) 0", 2)
    assert vanishes_at(line, (5, 5))
    assert not vanishes_at(line, (-1, -2))
    assert not vanishes_at(parse("3(*)xy", 2), (1, 1))


def test_roots():
    def pairs(text):
        return [(r.location, r.multiplicity) for r in roots_univariate(parse(text, 1))]

    assert pairs("x^2 (+) 2(*)x (+) -1") == [(TropicalNumber(-3), 1), (TropicalNumber(2), 1)]
    assert pairs("x^2 (+) 0") == [(TropicalNumber(0), 2)]
    assert pairs("x") == [(NEG_INF, 1)]


def test_factorizations():
    c, roots = factor_univariate(parse("x^2 (+) -100(*)x (+) 0", 1))
    assert c == 0 and [(r.location, r.multiplicity) for r in roots] == [(TropicalNumber(0), 2)]
    c, roots = factor_univariate(parse("5(*)x", 1))
    assert c == 5 and [(r.location, r.multiplicity) for r in roots] == [(NEG_INF, 1)]


def test_products():
    assert trop_poly_mul(parse("x (+) -3", 1), parse("x (+) 2", 1)) == parse("x^2 (+) 2(*)x (+) -1", 1)
    f = parse("x^2 (+) 1(*)xy (+) -2", 2)
    assert trop_poly_mul(f, parse("0", 2)) == f
    assert trop_poly_mul(parse("x (+) y", 2), parse("x (+) 0", 2)) == parse("x^2 (+) xy (+) x (+) y", 2)


def test_function_equality():
    assert function_equal(parse("x^2 (+) 0", 1), parse("x^2 (+) -100(*)x (+) 0", 1))
    assert not function_equal(parse("x^2 (+) 0", 1), parse("x^2 (+) 1(*)x (+) 0", 1))


def random_univariate(rng):
    n = rng.randint(1, 6)
    terms = {(k,): rng.randint(-10, 10) for k in range(n + 1) if k in (0, n) or rng.random() < 0.6}
    if rng.random() < 0.2:
        terms.pop((0,))
    return TropicalPolynomial(terms, 1)


@pytest.mark.parametrize("seed", range(40))
def test_factorization_expands_back(seed):
    p = random_univariate(random.Random(seed))
    c, roots = factor_univariate(p)
    assert sum(r.multiplicity for r in roots) == max(a[0] for a in p.terms)
    assert function_equal(expand_factorization(c, roots), p)


@pytest.mark.parametrize("seed", range(40))
def test_evaluation_against_brute_force(seed):
    rng = random.Random(seed)
    terms = {(rng.randint(0, 3), rng.randint(0, 3)): Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(5)}
    f = TropicalPolynomial(terms, 2)
    g = TropicalPolynomial({(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-5, 5) for _ in range(3)}, 2)
    w = (Fraction(rng.randint(-6, 6), 2), Fraction(rng.randint(-6, 6), 2))
    assert evaluate(f, w) == brute_max(f, w)
    assert evaluate(trop_poly_mul(f, g), w)[0] == evaluate(f, w)[0] + evaluate(g, w)[0]
