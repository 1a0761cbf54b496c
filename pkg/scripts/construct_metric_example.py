"""Search for a polynomial whose skeleton has loops 12 and 15 joined by a bridge of length 1.

Finds a unimodular triangulation of a genus-2 polygon whose dual skeleton is
a dumbbell with cycles of 5 and 6 curve edges, one bridge edge and one
pendant edge, then solves an exact LP for heights realising the edge lengths
2,1,1,3,5 / 6,3,3,1,1,1 (for unimodular triangles the lattice length of a
dual edge equals the fold of the height function across it).
"""

from itertools import permutations

from tropical.geometry.linalg import det
from tropical.geometry.lp import OPTIMAL, linprog
from tropical.geometry.polygons import LatticePolygon
from tropical.geometry.triangulations import triangulation_orbits

LOOP1 = (2, 1, 1, 3, 5)
LOOP2 = (6, 3, 3, 1, 1, 1)


def fold_rows(points, tris):
    owner = {}
    for k, t in enumerate(tris):
        a, b, c = t
        for e in ((a, b), (a, c), (b, c)):
            owner.setdefault(e, []).append(k)
    rows = {}
    for (a, b), ks in owner.items():
        if len(ks) != 2:
            continue
        c = next(v for v in tris[ks[0]] if v not in (a, b))
        d = next(v for v in tris[ks[1]] if v not in (a, b))
        P = [list(points[i]) + [1] for i in (a, b, c)]
        D = det(P)
        lam = []
        for j in range(3):
            Q = [r[:] for r in P]
            Q[j] = list(points[d]) + [1]
            lam.append(det(Q) * (1 if D > 0 else -1))
        row = [0] * len(points)
        for i, l in zip((a, b, c), lam):
            row[i] += l
        row[d] -= abs(D)
        rows[(a, b)] = (row, ks)
    return rows


def cycle_edges(rows, tris, p):
    """Interior edges through p, ordered around p."""
    es = [e for e in rows if p in e]
    # walk the triangles around p
    order = [es[0]]
    while len(order) < len(es):
        last = order[-1]
        ks = rows[last][1]
        for e in es:
            if e not in order and set(rows[e][1]) & set(ks):
                order.append(e)
                break
        else:
            return None
    return order


def cyclic_arrangements(seq):
    n = len(seq)
    out = set()
    for r in range(n):
        rot = seq[r:] + seq[:r]
        out.add(rot)
        out.add(tuple(reversed(rot)))
    return sorted(out)


def try_polygon(P):
    points, orbits = triangulation_orbits(P, up_to_symmetry=True)
    inner = [i for i, q in enumerate(points) if q in set(P.interior_points)]
    for o in orbits:
        tris = o.representative
        rows = fold_rows(points, tris)
        deg = {p: sum(1 for e in rows if p in e) for p in inner}
        if sorted(deg.values()) != [5, 6]:
            continue
        p1 = min(inner, key=lambda p: deg[p])
        p2 = max(inner, key=lambda p: deg[p])
        if (min(p1, p2), max(p1, p2)) in rows:
            continue
        c1, c2 = cycle_edges(rows, tris, p1), cycle_edges(rows, tris, p2)
        if c1 is None or c2 is None:
            continue
        rest = [e for e in rows if e not in c1 and e not in c2]
        if len(rest) != 2:
            continue
        for bridge in rest:
            leaf = next(e for e in rest if e != bridge)
            for l1 in cyclic_arrangements(LOOP1):
                for l2 in cyclic_arrangements(LOOP2):
                    A_eq, b_eq = [], []
                    for e, v in list(zip(c1, l1)) + list(zip(c2, l2)) + [(bridge, 1)]:
                        A_eq.append(rows[e][0])
                        b_eq.append(v)
                    res = linprog([0] * len(points), [[-x for x in rows[leaf][0]]], [-1], A_eq, b_eq)
                    if res.status == OPTIMAL:
                        return points, tris, res.x
    return None


def main():
    for bottom in range(3, 8):
        for top in range(0, 6):
            for extra in ([], [(0, 1)], [(3, 1)], [(0, 1), (3, 1)]):
                pts = [(0, 0), (bottom, 0), (0, 2), (top, 2)] + extra
                try:
                    P = LatticePolygon(pts)
                except Exception:
                    continue
                if sorted(P.interior_points) != [(1, 1), (2, 1)] or P.boundary_count != 10:
                    continue
                found = try_polygon(P)
                if found:
                    points, tris, h = found
                    print("points", points)
                    print("triangles", tris)
                    print("heights", [str(x) for x in h])
                    return


if __name__ == "__main__":
    main()
