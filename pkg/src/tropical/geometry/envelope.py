"""Convex-hull membership and upper concave envelopes via exact LP."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lp import OPTIMAL, linprog


def _combination_constraints(points: Sequence[Sequence[int]], q: Sequence) -> tuple[list, list]:
    dim = len(q)
    A_eq = [[p[i] for p in points] for i in range(dim)]
    A_eq.append([1] * len(points))
    b_eq = [Fraction(x) for x in q] + [Fraction(1)]
    return A_eq, b_eq


def in_hull(points: Sequence[Sequence[int]], q: Sequence) -> bool:
    A_eq, b_eq = _combination_constraints(points, q)
    res = linprog([0] * len(points), A_eq=A_eq, b_eq=b_eq)
    return res.status == OPTIMAL


def envelope_value(points: Sequence[Sequence[int]], values: Sequence, q: Sequence) -> Fraction | None:
    """Value at ``q`` of the upper concave envelope of lifted ``(points, values)``.

    ``None`` when ``q`` lies outside ``conv(points)``.
    """
    A_eq, b_eq = _combination_constraints(points, q)
    res = linprog([Fraction(v) for v in values], A_eq=A_eq, b_eq=b_eq)
    if res.status != OPTIMAL:
        return None
    return res.objective


def hull_vertices(points: Sequence[Sequence[int]]) -> list[int]:
    """Indices of points that are vertices of their convex hull."""
    uniq = []
    seen = set()
    for i, p in enumerate(points):
        t = tuple(p)
        if t not in seen:
            seen.add(t)
            uniq.append(i)
    out = []
    for i in uniq:
        others = [points[j] for j in uniq if j != i]
        if not others or not in_hull(others, points[i]):
            out.append(i)
    return out
