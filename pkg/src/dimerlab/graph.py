"""Small labeled multigraphs (at most 16 vertices) with bit-mask accessors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_VERTICES = 16

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


def adjacency_masks(n: int, edges: Sequence[Edge]) -> tuple[int, ...]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(adj)


@dataclass(frozen=True)
class SmallGraph:
    """Undirected multigraph; loops and parallel edges allowed, edge identity is list position."""

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in [1, {MAX_VERTICES}], got {self.n}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", adjacency_masks(self.n, edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "SmallGraph":
        try:
            n = data["n"]
            edges = [tuple(e) for e in data["edges"]]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        if any(len(e) != 2 for e in edges):
            raise GraphError("every edge must be a [u, v] pair")
        return build_graph(n, edges)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> SmallGraph:
    return SmallGraph(n, tuple(tuple(e) for e in edges))


def load_graph(path) -> SmallGraph:
    with open(path) as fh:
        return SmallGraph.from_json(json.load(fh))


def complete_graph(n: int) -> SmallGraph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> SmallGraph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SmallGraph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> SmallGraph:
    return build_graph(n, [(0, i) for i in range(1, n)])


def reach(g: SmallGraph, start: int, within: int | None = None) -> int:
    """Bit mask of vertices reachable from ``start`` inside the vertex set ``within``."""
    within = g.full if within is None else within
    seen = frontier = (1 << start) & within
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= g.adjacency[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_connected(g: SmallGraph) -> bool:
    return reach(g, 0) == g.full


def edges_within(g: SmallGraph, s: int) -> list[int]:
    """Indices of edges with both endpoints in the vertex mask ``s``, in edge-list order."""
    return [i for i, (u, v) in enumerate(g.edges) if (s >> u) & 1 and (s >> v) & 1]


def edge_counts_by_subset(g: SmallGraph) -> list[int]:
    """``|edges_within(g, S)|`` for every vertex mask S, built incrementally."""
    # count edges at their highest endpoint, then sum over the lowered subset
    counts = [0] * (1 << g.n)
    for s in range(1, 1 << g.n):
        top = s.bit_length() - 1
        rest = s ^ (1 << top)
        k = 0
        for u, v in g.edges:
            if max(u, v) == top and (rest | (1 << top)) >> min(u, v) & 1:
                k += 1
        counts[s] = counts[rest] + k
    return counts


def random_connected_graph(rng, n: int, extra: int, multi: bool = False) -> SmallGraph:
    """Random spanning tree on n vertices plus ``extra`` random additional edges.

    With ``multi`` the extra edges may repeat existing pairs or be loops;
    otherwise they are distinct non-loop pairs (capped by what is available).
    """
    edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    perm = [int(i) for i in rng.permutation(n)]
    edges = [(perm[u], perm[v]) for u, v in edges]
    if multi:
        for _ in range(extra):
            u, v = (int(a) for a in rng.integers(0, n, size=2))
            edges.append((u, v))
    else:
        present = {frozenset(e) for e in edges}
        free = [(i, j) for i in range(n) for j in range(i + 1, n) if frozenset((i, j)) not in present]
        pick = rng.permutation(len(free))[: min(extra, len(free))]
        edges.extend(free[int(i)] for i in pick)
    return build_graph(n, edges)
