"""Exact max-plus arithmetic and max-plus linear algebra.

Tropical addition is ``max`` and tropical multiplication is ``+`` over the
rationals extended by a bottom element ``-inf``.  Python operators follow the
semiring: ``a + b`` is the tropical sum and ``a * b`` the tropical product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, str, "TropicalNumber"]


class TropicalError(ValueError):
    """Domain error raised by tropical operations."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {x!r} to an exact rational")


@total_ordering
class TropicalNumber:
    """A rational number or the tropical zero ``-inf``.

    Instances are immutable.  ``NEG_INF`` is the only object representing
    the bottom element, so identity and equality agree for it.
    """

    __slots__ = ("_value",)
    _neg_inf: "TropicalNumber | None" = None

    def __new__(cls, value: Number | None = None):
        if isinstance(value, TropicalNumber):
            return value
        if value is None or (isinstance(value, str) and value.strip() in ("-inf", "-∞")):
            if cls._neg_inf is None:
                obj = super().__new__(cls)
                obj._value = None
                cls._neg_inf = obj
            return cls._neg_inf
        obj = super().__new__(cls)
        obj._value = as_fraction(value)
        return obj

    @property
    def value(self) -> Fraction | None:
        return self._value

    @property
    def is_neg_inf(self) -> bool:
        return self._value is None

    def __setattr__(self, name, value):
        if name == "_value" and not hasattr(self, "_value"):
            object.__setattr__(self, name, value)
            return
        raise AttributeError("TropicalNumber is immutable")

    def __reduce__(self):
        return (TropicalNumber, (None if self._value is None else str(self._value),))

    # semiring operations
    def __add__(self, other: Number) -> "TropicalNumber":
        return trop_add(self, other)

    __radd__ = __add__

    def __mul__(self, other: Number) -> "TropicalNumber":
        return trop_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TropicalNumber":
        if n < 0:
            return self.inverse() ** (-n)
        if self._value is None:
            return self if n > 0 else ONE
        return TropicalNumber(self._value * n)

    def inverse(self) -> "TropicalNumber":
        if self._value is None:
            raise TropicalError("-inf has no tropical inverse")
        return TropicalNumber(-self._value)

    # order: -inf below every rational
    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalNumber):
            try:
                other = TropicalNumber(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._value == other._value

    def __lt__(self, other) -> bool:
        other = TropicalNumber(other)
        if self._value is None:
            return other._value is not None
        if other._value is None:
            return False
        return self._value < other._value

    def __hash__(self) -> int:
        return hash(("trop", self._value))

    def __repr__(self) -> str:
        return f"TropicalNumber({str(self)!r})"

    def __str__(self) -> str:
        return "-inf" if self._value is None else str(self._value)


NEG_INF = TropicalNumber(None)
ONE = TropicalNumber(0)  # multiplicative identity


def trop_add(a: Number, b: Number) -> TropicalNumber:
    a, b = TropicalNumber(a), TropicalNumber(b)
    return b if a < b else a


def trop_mul(a: Number, b: Number) -> TropicalNumber:
    a, b = TropicalNumber(a), TropicalNumber(b)
    if a.is_neg_inf or b.is_neg_inf:
        return NEG_INF
    return TropicalNumber(a.value + b.value)


def trop_sum(items: Iterable[Number]) -> TropicalNumber:
    out = NEG_INF
    for x in items:
        out = trop_add(out, x)
    return out


def trop_prod(items: Iterable[Number]) -> TropicalNumber:
    out = ONE
    for x in items:
        out = trop_mul(out, x)
    return out


class TropicalMatrix:
    """Rectangular matrix over the tropical semiring (row-major)."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Sequence[Sequence[Number]]):
        rows = [tuple(TropicalNumber(x) for x in row) for row in entries]
        if not rows or not rows[0]:
            raise TropicalError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise TropicalError("matrix rows have unequal lengths")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_entries", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("TropicalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "TropicalMatrix":
        return cls([[ONE if i == j else NEG_INF for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> TropicalNumber:
        i, j = ij
        return self._entries[i][j]

    def row(self, i: int) -> tuple[TropicalNumber, ...]:
        return self._entries[i]

    def to_lists(self) -> list[list[TropicalNumber]]:
        return [list(r) for r in self._entries]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        return isinstance(other, TropicalMatrix) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __matmul__(self, other: "TropicalMatrix") -> "TropicalMatrix":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        body = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self._entries)
        return f"TropicalMatrix(({body}))"

    # JSON: nested arrays of strings, "-inf" for the bottom element
    def to_json_obj(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._entries]

    @classmethod
    def from_json_obj(cls, obj) -> "TropicalMatrix":
        def conv(x):
            if isinstance(x, str):
                return TropicalNumber(x)
            if isinstance(x, int) and not isinstance(x, bool):
                return TropicalNumber(x)
            raise TropicalError(f"bad matrix entry {x!r}; use integers, 'p/q' or '-inf'")

        return cls([[conv(x) for x in row] for row in obj])

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def loads(cls, text: str) -> "TropicalMatrix":
        return cls.from_json_obj(json.loads(text))


def mat_mul(A: TropicalMatrix, B: TropicalMatrix) -> TropicalMatrix:
    if A.cols != B.rows:
        raise TropicalError(f"dimension mismatch: {A.shape} times {B.shape}")
    out = []
    for i in range(A.rows):
        row = A.row(i)
        out.append([trop_sum(trop_mul(row[k], B[k, j]) for k in range(A.cols)) for j in range(B.cols)])
    return TropicalMatrix(out)


@dataclass(frozen=True)
class DeterminantResult:
    """Tropical determinant (max-plus permanent) of a square matrix.

    ``singular`` is true when the maximum is attained by at least two
    permutations, or when the value is ``-inf``.
    """

    value: TropicalNumber
    optimal_permutations: int

    @property
    def singular(self) -> bool:
        return self.value.is_neg_inf or self.optimal_permutations >= 2


def trop_det(A: TropicalMatrix) -> DeterminantResult:
    """Optimal assignment value via a subset dynamic program.

    Tracks how many permutations attain the optimum so that tropical
    singularity can be reported alongside the value.
    """
    if A.rows != A.cols:
        raise TropicalError(f"determinant needs a square matrix, got {A.shape}")
    n = A.rows
    # best[mask] = (value, count) over injective assignments of rows 0..popcount-1
    best: dict[int, tuple[TropicalNumber, int]] = {0: (ONE, 1)}
    for i in range(n):
        nxt: dict[int, tuple[TropicalNumber, int]] = {}
        for mask, (val, cnt) in best.items():
            if val.is_neg_inf:
                continue
            for j in range(n):
                if mask >> j & 1:
                    continue
                a = A[i, j]
                if a.is_neg_inf:
                    continue
                cand = trop_mul(val, a)
                key = mask | (1 << j)
                cur = nxt.get(key)
                if cur is None or cur[0] < cand:
                    nxt[key] = (cand, cnt)
                elif cur[0] == cand:
                    nxt[key] = (cand, cur[1] + cnt)
        best = nxt
    full = (1 << n) - 1
    if full not in best:
        return DeterminantResult(NEG_INF, 0)
    val, cnt = best[full]
    return DeterminantResult(val, cnt)


def trop_eigenvalue(A: TropicalMatrix) -> TropicalNumber:
    """Maximum cycle mean of the weighted digraph of ``A`` (Karp's algorithm).

    Entry ``A[i, j]`` is the weight of the arc ``i -> j``; ``-inf`` means no
    arc.  In the min-plus convention this is the minimum cycle mean, the
    quantity behind shortest-weighted-cycle interpretations.
    """
    if A.rows != A.cols:
        raise TropicalError(f"eigenvalue needs a square matrix, got {A.shape}")
    n = A.rows
    # D[k][v]: max weight of a k-arc walk ending at v, starting anywhere
    D: list[list[Fraction | None]] = [[Fraction(0)] * n]
    for k in range(1, n + 1):
        prev = D[-1]
        cur: list[Fraction | None] = [None] * n
        for u in range(n):
            if prev[u] is None:
                continue
            for v in range(n):
                w = A[u, v].value
                if w is None:
                    continue
                cand = prev[u] + w
                if cur[v] is None or cand > cur[v]:
                    cur[v] = cand
        D.append(cur)
    best: Fraction | None = None
    for v in range(n):
        if D[n][v] is None:
            continue
        worst: Fraction | None = None
        for k in range(n):
            if D[k][v] is None:
                continue
            mean = (D[n][v] - D[k][v]) / (n - k)
            if worst is None or mean < worst:
                worst = mean
        if worst is not None and (best is None or worst > best):
            best = worst
    if best is None:
        raise TropicalError("matrix has no cycle of finite weight; no eigenvalue")
    return TropicalNumber(best)

