from fractions import Fraction
from itertools import permutations

import pytest

from tropical.semiring import (
    NEG_INF,
    TropicalError,
    TropicalMatrix,
    TropicalNumber,
    mat_mul,
    trop_add,
    trop_det,
    trop_eigenvalue,
    trop_mul,
)


def brute_det(A: TropicalMatrix):
    n = A.shape[0]
    best = NEG_INF
    for s in permutations(range(n)):
        v = TropicalNumber(0)
        for i in range(n):
            v = v * A[i, s[i]]
        best = best + v
    return best


def brute_eigenvalue(A: TropicalMatrix):
    """Maximum cycle mean by listing simple cycles."""
    n = A.shape[0]
    best = None
    for k in range(1, n + 1):
        for cyc in permutations(range(n), k):
            if cyc[0] != min(cyc):
                continue
            w = Fraction(0)
            ok = True
            for i in range(k):
                a = A[cyc[i], cyc[(i + 1) % k]]
                if a.is_neg_inf:
                    ok = False
                    break
                w += a.value
            if ok and (best is None or w / k > best):
                best = w / k
    return best


def test_scalar_operations():
    assert trop_add(2, 3) == TropicalNumber(3)
    assert trop_add(NEG_INF, 2) == TropicalNumber(2)
    assert trop_mul(2, 3) == TropicalNumber(5)
    assert trop_mul(NEG_INF, 2) is NEG_INF
    assert TropicalNumber(7) * 0 == TropicalNumber(7)
    assert TropicalNumber("1/2") + TropicalNumber("1/2") == TropicalNumber("1/2")


def test_matrix_product_from_text():
    A = TropicalMatrix([[5, 2], [-1, 8]])
    B = TropicalMatrix([[1, 0], [2, "-inf"]])
    assert mat_mul(A, B) == TropicalMatrix([[6, 5], [10, -1]])
    assert A @ TropicalMatrix.identity(2) == A


def test_matrix_product_all_zero_rows():
    Z = TropicalMatrix([[0, 0], [0, 0]])
    assert mat_mul(Z, TropicalMatrix([[1, 2], [3, 4]])) == TropicalMatrix([[3, 4], [3, 4]])


def test_matrix_json_round_trip():
    A = TropicalMatrix([[5, "-inf"], ["1/3", 8]])
    assert TropicalMatrix.loads(A.dumps()) == A


def test_shape_mismatch_is_rejected():
    with pytest.raises(TropicalError):
        mat_mul(TropicalMatrix([[1, 2]]), TropicalMatrix([[1, 2]]))


def test_determinant_examples():
    res = trop_det(TropicalMatrix([[5, 2], [-1, 8]]))
    assert res.value == TropicalNumber(13)
    assert trop_det(TropicalMatrix.identity(4)).value == TropicalNumber(0)
    res = trop_det(TropicalMatrix([[1, 2, 3], ["-inf", "-inf", "-inf"], [0, 0, 0]]))
    assert res.value is NEG_INF and res.singular


@pytest.mark.parametrize("seed", range(30))
def test_determinant_matches_permutation_expansion(seed):
    import random

    rng = random.Random(seed)
    n = rng.randint(1, 5)
    rows = [[rng.choice([NEG_INF, rng.randint(-9, 9)]) for _ in range(n)] for _ in range(n)]
    A = TropicalMatrix(rows)
    assert trop_det(A).value == brute_det(A)


def test_eigenvalue_examples():
    assert trop_eigenvalue(TropicalMatrix([[5, 2], [-1, 8]])) == TropicalNumber(8)
    assert trop_eigenvalue(TropicalMatrix([["-inf", 0], [1, "-inf"]])) == TropicalNumber(Fraction(1, 2))
    D = TropicalMatrix([[3, "-inf", "-inf"], ["-inf", 3, "-inf"], ["-inf", "-inf", 3]])
    assert trop_eigenvalue(D) == TropicalNumber(3)


def test_eigenvalue_without_cycles():
    with pytest.raises(TropicalError):
        trop_eigenvalue(TropicalMatrix([["-inf", 0], ["-inf", "-inf"]]))


@pytest.mark.parametrize("seed", range(30))
def test_eigenvalue_matches_cycle_listing(seed):
    import random

    rng = random.Random(100 + seed)
    n = rng.randint(1, 5)
    rows = [[rng.choice([NEG_INF, rng.randint(-9, 9), rng.randint(-9, 9)]) for _ in range(n)] for _ in range(n)]
    A = TropicalMatrix(rows)
    expected = brute_eigenvalue(A)
    if expected is None:
        with pytest.raises(TropicalError):
            trop_eigenvalue(A)
    else:
        assert trop_eigenvalue(A) == TropicalNumber(expected)
