"""Seeded property suites over the core algebra and geometry.

Each suite draws 10^4 cases.  They are run from the acceptance module so the
full sample size is paid for once per session.
"""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from tropical.hypersurface import build_curve, check_balancing
from tropical.polynomial import TropicalPolynomial, trop_poly_mul, vanishes_at
from tropical.semiring import NEG_INF, TropicalNumber
from tropical.skeleton import MetricGraph, canonical_certificate
from tropical.tropicalize import INF, PuiseuxElement, series_val, val_p

EXAMPLES = 10_000
ACCEPTANCE_SUITES = (
    "test_semiring_axioms",
    "test_p_adic_valuation_axioms",
    "test_series_valuation_axioms",
    "test_product_hypersurface_is_union",
    "test_curves_are_balanced",
    "test_certificate_ignores_vertex_labels",
)

seeded = settings(
    max_examples=EXAMPLES,
    derandomize=True,
    database=None,
    deadline=None,
    suppress_health_check=list(HealthCheck),
)

def rationals(bound: int, max_denominator: int):
    """Fractions n/d with |n/d| <= bound; cheaper to draw than ``st.fractions``."""
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(-bound * max_denominator, bound * max_denominator),
        st.integers(1, max_denominator),
    ).filter(lambda q: abs(q) <= bound)


small_q = rationals(20, 6)
tropical_numbers = st.one_of(st.just(NEG_INF), small_q.map(TropicalNumber))


@seeded
@given(tropical_numbers, tropical_numbers, tropical_numbers)
def test_semiring_axioms(a, b, c):
    zero, one = NEG_INF, TropicalNumber(0)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + zero == a and a * one == a and a * zero == zero
    assert a + a == a
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


nonzero_rationals = st.builds(Fraction, st.integers(-10**6, 10**6).filter(bool), st.integers(1, 10**4))
primes = st.sampled_from([2, 3, 5, 7, 11])


@seeded
@given(nonzero_rationals, nonzero_rationals, primes)
def test_p_adic_valuation_axioms(a, b, p):
    assert val_p(a * b, p) == val_p(a, p) + val_p(b, p)
    if a + b == 0:
        assert val_p(a + b, p) == INF
    else:
        assert val_p(a + b, p) >= min(val_p(a, p), val_p(b, p))
    assert val_p(Fraction(0), p) == INF


series_terms = st.lists(
    st.tuples(st.integers(-20, 20), st.integers(1, 15)),
    max_size=4,
).map(lambda pairs: {Fraction(e, 4): Fraction(c, 3) for e, c in pairs})


@seeded
@given(series_terms, series_terms)
def test_series_valuation_axioms(m1, m2):
    a, b = PuiseuxElement.from_map(m1), PuiseuxElement.from_map(m2)
    va, vb = series_val(a), series_val(b)
    prod = series_val(a * b)
    if a.is_zero() or b.is_zero():
        assert prod == INF
    else:
        assert prod == va + vb
    assert series_val(a + b) >= min(va, vb)
    if va != vb:
        assert series_val(a + b) == min(va, vb)


def plane_polynomials(max_degree: int):
    exps = [(i, j) for i in range(max_degree + 1) for j in range(max_degree + 1 - i)]
    return st.dictionaries(st.sampled_from(exps), st.integers(-3, 3), min_size=1, max_size=len(exps)).map(
        lambda m: TropicalPolynomial(m, 2)
    )


half_points = st.tuples(
    st.integers(-8, 8).map(lambda k: Fraction(k, 2)),
    st.integers(-8, 8).map(lambda k: Fraction(k, 2)),
)


@seeded
@given(plane_polynomials(2), plane_polynomials(2), half_points)
def test_product_hypersurface_is_union(f, g, w):
    assert vanishes_at(trop_poly_mul(f, g), w) == (vanishes_at(f, w) or vanishes_at(g, w))


@st.composite
def full_curves(draw):
    d = draw(st.integers(1, 2))
    exps = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    terms = {a: draw(st.integers(-6, 6)) for a in exps if a in ((0, 0), (d, 0), (0, d)) or draw(st.booleans())}
    return TropicalPolynomial(terms, 2)


@seeded
@given(full_curves())
def test_curves_are_balanced(p):
    assert check_balancing(build_curve(p))


@st.composite
def graphs_with_relabelling(draw):
    n = draw(st.integers(1, 6))
    # one draw per edge: (u, v, length) packed into a single integer
    codes = draw(st.lists(st.integers(0, n * n * 4 - 1), max_size=9))
    edges = [(c // (4 * n), c // 4 % n, c % 4 + 1) for c in codes]
    perm = draw(st.permutations(list(range(n))))
    return MetricGraph(n, tuple(edges)), perm


@seeded
@given(graphs_with_relabelling())
def test_certificate_ignores_vertex_labels(case):
    G, perm = case
    H = G.relabel(perm)
    assert canonical_certificate(G) == canonical_certificate(H)
    assert canonical_certificate(G, with_lengths=True) == canonical_certificate(H, with_lengths=True)

