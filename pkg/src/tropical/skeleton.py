"""Metric graphs: skeletons of tropical curves, graph predicates and canonical certificates."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry.linalg import integer_vector
from .semiring import TropicalError


def lattice_length(p1: Sequence, p2: Sequence) -> Fraction:
    """Scalar ``l`` with ``p2 - p1 = l * v`` for a primitive integer vector ``v``."""
    diff = [Fraction(b) - Fraction(a) for a, b in zip(p1, p2)]
    if not any(diff):
        return Fraction(0)
    prim = integer_vector(diff)
    k = next(i for i, x in enumerate(prim) if x)
    return abs(diff[k] / prim[k])


@dataclass(frozen=True)
class MetricGraph:
    """Multigraph on vertices ``0..n-1``; loops and parallel edges allowed."""

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        edges = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            length = Fraction(e[2]) if len(e) > 2 else Fraction(1)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise TropicalError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if length < 0:
                raise TropicalError("edge lengths must be non-negative")
            edges.append((min(u, v), max(u, v), length))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w, _ in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def _components(self, skip_edge: int | None = None, skip_vertex: int | None = None) -> int:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, (u, v, _) in enumerate(self.edges):
            if k == skip_edge or skip_vertex in (u, v):
                continue
            parent[find(u)] = find(v)
        return len({find(x) for x in range(self.n) if x != skip_vertex})

    def is_connected(self) -> bool:
        return self.n <= 1 or self._components() == 1

    def genus(self) -> int:
        if not self.is_connected():
            raise TropicalError("genus is defined here for connected graphs")
        if self.n == 0:
            return 0
        return self.num_edges - self.n + 1

    def is_trivalent(self) -> bool:
        return self.n > 0 and all(d == 3 for d in self.degrees())

    def bridges(self) -> list[int]:
        """Indices of edges whose removal disconnects the graph."""
        base = self._components()
        return [k for k, (u, v, _) in enumerate(self.edges) if u != v and self._components(skip_edge=k) > base]

    def is_sprawling(self) -> bool:
        base = self._components()
        return any(self._components(skip_vertex=v) >= base + 2 for v in range(self.n))

    def total_length(self) -> Fraction:
        return sum((e[2] for e in self.edges), Fraction(0))

    def relabel(self, perm: Sequence[int]) -> "MetricGraph":
        return MetricGraph(self.n, tuple((perm[u], perm[v], l) for u, v, l in self.edges))

    def to_json_obj(self) -> dict:
        return {"vertices": self.n, "edges": [[u, v, str(l)] for u, v, l in self.edges]}

    @classmethod
    def from_json_obj(cls, obj) -> "MetricGraph":
        return cls(obj["vertices"], tuple((u, v, Fraction(l)) for u, v, l in obj["edges"]))


def skeleton_graph(vertices: Sequence[Sequence], edges: Iterable[tuple[int, int]]) -> MetricGraph:
    """Prune leaves and smooth degree-two vertices of a graph embedded with rational coordinates."""
    live: dict[int, tuple[int, int, Fraction]] = {}
    for k, (u, v) in enumerate(edges):
        live[k] = (u, v, lattice_length(vertices[u], vertices[v]))
    incident: dict[int, set[int]] = {i: set() for i in range(len(vertices))}
    for k, (u, v, _) in live.items():
        incident[u].add(k)
        incident[v].add(k)

    def deg(x):
        return sum(2 if live[k][0] == live[k][1] else 1 for k in incident[x])

    # prune leaves (and isolated vertices) to a fixpoint
    stack = [x for x in incident if deg(x) <= 1]
    while stack:
        x = stack.pop()
        if x not in incident or deg(x) > 1:
            continue
        for k in list(incident[x]):
            u, v, _ = live.pop(k)
            other = v if u == x else u
            incident[other].discard(k)
            if deg(other) <= 1:
                stack.append(other)
        del incident[x]
    # smooth vertices with two distinct edge ends
    next_id = max(live, default=-1) + 1
    changed = True
    while changed:
        changed = False
        for x in sorted(incident):
            ks = sorted(incident[x])
            if len(ks) != 2:
                continue
            (a1, b1, l1), (a2, b2, l2) = live[ks[0]], live[ks[1]]
            if a1 == b1 or a2 == b2:
                continue
            y = b1 if a1 == x else a1
            z = b2 if a2 == x else a2
            for k in ks:
                live.pop(k)
                incident[y].discard(k)
                incident[z].discard(k)
            del incident[x]
            live[next_id] = (y, z, l1 + l2)
            incident[y].add(next_id)
            incident[z].add(next_id)
            next_id += 1
            changed = True
            break
    order = sorted(incident)
    index = {x: i for i, x in enumerate(order)}
    return MetricGraph(len(order), tuple((index[u], index[v], l) for u, v, l in live.values()))


def skeletonize(C) -> MetricGraph:
    """Delete rays, prune leaves, smooth two-valent vertices; lengths are lattice lengths."""
    return skeleton_graph(C.vertices, [(e.u, e.v) for e in C.edges])


# --------------------------------------------------------------- certificates

def _pair_labels(G: MetricGraph, with_lengths: bool) -> dict[tuple[int, int], tuple]:
    lab: dict[tuple[int, int], list] = {}
    for u, v, l in G.edges:
        lab.setdefault((u, v), []).append(l if with_lengths else 1)
        if u != v:
            lab.setdefault((v, u), []).append(l if with_lengths else 1)
    return {k: tuple(sorted(v)) for k, v in lab.items()}


def _refine(n: int, colors: list[int], nbrs: list[list[tuple[int, tuple]]]) -> list[int]:
    while True:
        sigs = [(colors[x], tuple(sorted((colors[y], lab) for y, lab in nbrs[x]))) for x in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_certificate(G: MetricGraph, with_lengths: bool = False, max_vertices: int = 16) -> bytes:
    """Isomorphism-invariant encoding: equal certificates iff isomorphic graphs.

    Colour refinement with individualisation; the certificate is the least
    adjacency encoding over all leaves of the search tree.
    """
    n = G.n
    if n > max_vertices:
        raise TropicalError(f"graph has {n} vertices; certificate budget is {max_vertices}")
    labels = _pair_labels(G, with_lengths)
    nbrs: list[list[tuple[int, tuple]]] = [[] for _ in range(n)]
    for (u, v), lab in labels.items():
        if u != v:
            nbrs[u].append((v, lab))
    init_sig = [(G.degree(x), labels.get((x, x), ())) for x in range(n)]
    ranks = {s: i for i, s in enumerate(sorted(set(init_sig)))}
    colors = _refine(n, [ranks[s] for s in init_sig], nbrs)

    best: list = [None]

    def encode(order: list[int]) -> tuple:
        pos = {x: i for i, x in enumerate(order)}
        return tuple(sorted((pos[u], pos[v], lab) for (u, v), lab in labels.items() if pos[u] <= pos[v]))

    def search(colors: list[int]) -> None:
        if len(set(colors)) == n:
            order = sorted(range(n), key=lambda x: colors[x])
            enc = encode(order)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        counts = Counter(colors)
        target = min(c for c in counts if counts[c] > 1)
        for x in range(n):
            if colors[x] != target:
                continue
            # individualise x: split its class, x first
            split = [2 * c + (1 if c == target and y != x else 0) for y, c in enumerate(colors)]
            search(_refine(n, split, nbrs))

    if n:
        search(colors)
    enc = best[0] or ()
    payload = [n, [[a, b, [str(x) for x in lab]] for a, b, lab in enc]]
    return json.dumps(payload, separators=(",", ":")).encode()


def are_isomorphic(G: MetricGraph, H: MetricGraph, with_lengths: bool = False) -> bool:
    return canonical_certificate(G, with_lengths) == canonical_certificate(H, with_lengths)


# ------------------------------------------------------------ named graphs

def theta_graph(lengths=(1, 1, 1)) -> MetricGraph:
    return MetricGraph(2, tuple((0, 1, l) for l in lengths))


def dumbbell_graph(loop1=1, loop2=1, bridge=1) -> MetricGraph:
    return MetricGraph(2, ((0, 0, loop1), (1, 1, loop2), (0, 1, bridge)))


def genus3_trivalent_graphs() -> dict[str, MetricGraph]:
    """The five connected trivalent graphs of genus three (combinatorial lengths 1)."""
    return {
        "k4": MetricGraph(4, ((0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1))),
        "doubled_square": MetricGraph(4, ((0, 1, 1), (0, 1, 1), (2, 3, 1), (2, 3, 1), (0, 2, 1), (1, 3, 1))),
        "triangle_doubled_edge_loop": MetricGraph(4, ((0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 2, 1), (0, 3, 1), (3, 3, 1))),
        "loop_chain": MetricGraph(4, ((0, 0, 1), (0, 1, 1), (1, 2, 1), (1, 2, 1), (2, 3, 1), (3, 3, 1))),
        "lollipop": MetricGraph(4, ((0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1))),
    }
