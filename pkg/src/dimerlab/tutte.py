"""Tutte polynomial evaluation and the Ursell coefficient of overlap graphs.

Three independent routes to T_G(1, 0):

* ``ursell_brute`` sums (-1)^|A| over every connected spanning edge subset A,
  the definition of the Ursell coefficient, 2^m terms.
* ``tutte_eval_delcon`` runs deletion-contraction with exact rationals.
* ``tutte_10_bhkk`` counts connected spanning subgraphs of every vertex subset
  by the anchored subset recursion, 3^n terms regardless of edge count.

The Ursell coefficient is ``(-1)^(n-1) T_G(1, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .graph import GraphError, SmallGraph, edge_counts_by_subset, is_connected

BRUTE_MAX_EDGES = 24
FULL_TUTTE_MAX_VERTICES = 12

Number = int | Fraction


class DisconnectedGraphError(GraphError):
    pass


# ---------------------------------------------------------------------------
# brute force over edge subsets


def _brute_connected_signs(g: SmallGraph, chunk_bits: int = 20) -> tuple[int, int]:
    """(number of connected spanning edge subsets, sum of (-1)^|A| over them)."""
    m, n = g.m, g.n
    if m > BRUTE_MAX_EDGES:
        raise GraphError(f"brute force is limited to {BRUTE_MAX_EDGES} edges, got {m}")
    full = g.full
    proper = [(e, u, v) for e, (u, v) in enumerate(g.edges) if u != v]
    size = 1 << min(m, chunk_bits)
    count = signed = 0
    for start in range(0, 1 << m, size):
        masks = np.arange(start, start + size, dtype=np.int64)
        active = {e: ((masks >> e) & 1).astype(bool) for e, _, _ in proper}
        reach = np.ones(size, dtype=np.int64)
        while True:
            before = reach.copy()
            for e, u, v in proper:
                hit = active[e] & (((reach >> u) | (reach >> v)) & 1).astype(bool)
                reach |= np.where(hit, (1 << u) | (1 << v), 0)
            if np.array_equal(before, reach):
                break
        conn = reach == full
        odd = (np.bitwise_count(masks) & 1).astype(bool)
        n_odd = int(np.count_nonzero(conn & odd))
        n_all = int(np.count_nonzero(conn))
        count += n_all
        signed += n_all - 2 * n_odd
    return count, signed


def ursell_brute(g: SmallGraph) -> int:
    """Sum of (-1)^|A| over edge subsets A whose spanning subgraph is connected.

    Returns 0 for a disconnected graph, where no such A exists.
    """
    return _brute_connected_signs(g)[1]


def count_connected_spanning_brute(g: SmallGraph) -> int:
    return _brute_connected_signs(g)[0]


# ---------------------------------------------------------------------------
# deletion-contraction


def _reachable(edges: Sequence[tuple[int, int]], u: int, v: int) -> bool:
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        if w == v:
            return True
        for z in adj.get(w, ()):
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return False


def _contract(edges, u: int, v: int):
    out = []
    for a, b in edges:
        a = u if a == v else a
        b = u if b == v else b
        out.append((a, b) if a <= b else (b, a))
    out.sort()
    return tuple(out)


def tutte_eval_delcon(g: SmallGraph, x: Number, y: Number) -> Fraction:
    """Exact T_g(x, y) by deletion-contraction.

    Loops give a factor y and bridges a factor x; parallel bundles are peeled
    in one step, which is the single-edge rule applied k times.
    """
    x, y = Fraction(x), Fraction(y)
    memo: dict[tuple, Fraction] = {}

    def rec(edges: tuple) -> Fraction:
        if not edges:
            return Fraction(1)
        hit = memo.get(edges)
        if hit is not None:
            return hit
        loops = sum(1 for a, b in edges if a == b)
        if loops:
            val = y**loops * rec(tuple(e for e in edges if e[0] != e[1]))
        else:
            u, v = edges[0]
            k = sum(1 for e in edges if e == (u, v))
            rest = tuple(e for e in edges if e != (u, v))
            geom = sum((y**i for i in range(k)), Fraction(0))
            contracted = rec(_contract(rest, u, v))
            if _reachable(rest, u, v):
                val = rec(rest) + geom * contracted
            else:
                val = (x + geom - 1) * contracted
        memo[edges] = val
        return val

    start = tuple(sorted((min(a, b), max(a, b)) for a, b in g.edges))
    return rec(start)


# ---------------------------------------------------------------------------
# subset recursion over vertex sets
#
# Polynomials in z with nonnegative coefficients below 2^m are packed into one
# integer, coefficient j in bits [j*B, (j+1)*B) with B = m + 1.  Every
# quantity below counts edge subsets, so no digit overflows or borrows.


def _pack_width(g: SmallGraph) -> int:
    return g.m + 1


def _unpack(value: int, width: int, length: int) -> list[int]:
    mask = (1 << width) - 1
    return [(value >> (width * j)) & mask for j in range(length)]


def _trim(coeffs: list[int]) -> list[int]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _subgraph_polys(g: SmallGraph, width: int) -> list[int]:
    """Packed (1 + z)^|E(S)| for every vertex mask S."""
    counts = edge_counts_by_subset(g)
    one_plus_z = 1 + (1 << width)
    powers = [1]
    for _ in range(g.m):
        powers.append(powers[-1] * one_plus_z)
    return [powers[c] for c in counts]


def _connected_packed(g: SmallGraph, width: int, every: list[int]) -> list[int]:
    size = 1 << g.n
    conn = [0] * size
    conn[0] = 1
    for s in sorted(range(1, size), key=int.bit_count):
        anchor = s & -s
        rest = s ^ anchor
        acc = 0
        # proper subsets P of S containing the anchor: P = anchor | sub, sub != rest
        sub = (rest - 1) & rest
        while True:
            if sub != rest:
                p = anchor | sub
                acc += conn[p] * every[s ^ p]
            if sub == 0:
                break
            sub = (sub - 1) & rest
        conn[s] = every[s] - acc
    return conn


@dataclass(frozen=True)
class ConnectedCountTable:
    """``C_S(z) = sum_j c(S, j) z^j`` for every vertex mask S of a graph."""

    n: int
    m: int
    polys: tuple[tuple[int, ...], ...]

    def __getitem__(self, s: int) -> tuple[int, ...]:
        return self.polys[s]

    def count(self, s: int, j: int) -> int:
        poly = self.polys[s]
        return poly[j] if 0 <= j < len(poly) else 0

    @property
    def full(self) -> tuple[int, ...]:
        return self.polys[(1 << self.n) - 1]


def connected_counts(g: SmallGraph) -> ConnectedCountTable:
    """Connected spanning subgraph counts of every induced subgraph by edge count.

    ``C_S = E_S - sum_{a(S) in P, P proper subset of S} C_P E_{S-P}`` with
    ``E_S = (1+z)^|E(S)|`` and a(S) the lowest vertex of S, O(3^n) products.
    """
    width = _pack_width(g)
    every = _subgraph_polys(g, width)
    conn = _connected_packed(g, width, every)
    polys = tuple(tuple(_trim(_unpack(c, width, g.m + 1))) for c in conn)
    return ConnectedCountTable(g.n, g.m, polys)


def _alternating_sum(poly: Sequence[int]) -> int:
    return sum(c if j % 2 == 0 else -c for j, c in enumerate(poly))


def tutte_10_bhkk(g: SmallGraph) -> int:
    """T_g(1, 0) from the connected spanning subgraph counts of the whole vertex set."""
    if not is_connected(g):
        raise DisconnectedGraphError("T(1,0) by subset recursion needs a connected graph")
    table = connected_counts(g)
    sign = -1 if (g.n - 1) % 2 else 1
    return sign * _alternating_sum(table.full)


def ursell(g: SmallGraph) -> int:
    """Ursell coefficient psi'_c = (-1)^(n-1) T_g(1, 0) of a connected graph."""
    t10 = tutte_10_bhkk(g)
    return -t10 if (g.n - 1) % 2 else t10


# ---------------------------------------------------------------------------
# full polynomial


@dataclass(frozen=True)
class TuttePoly:
    """Integer coefficients, ``coeffs[i][j]`` multiplies x^i y^j."""

    coeffs: tuple[tuple[int, ...], ...]

    def __call__(self, x: Number, y: Number) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        total = Fraction(0)
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    total += c * x**i * y**j
        return total

    def terms(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if c}

    def __str__(self) -> str:
        parts = []
        for (i, j), c in sorted(self.terms().items(), key=lambda kv: (-kv[0][0] - kv[0][1], -kv[0][0])):
            mono = "".join(
                s for s in (f"x^{i}" if i > 1 else "x" * i, f"y^{j}" if j > 1 else "y" * j) if s
            )
            parts.append(f"{c if c != 1 or not mono else ''}{mono}")
        return " + ".join(parts) or "0"


def component_edge_table(g: SmallGraph) -> list[list[int]]:
    """``d[c][j]`` = number of edge subsets with c components (isolated vertices included) and j edges."""
    width = _pack_width(g)
    every = _subgraph_polys(g, width)
    conn = _connected_packed(g, width, every)
    size = 1 << g.n
    # gen[S][c] is the packed z-polynomial of edge subsets of E(S) with c components
    gen: list[list[int]] = [[] for _ in range(size)]
    gen[0] = [1]
    for s in sorted(range(1, size), key=int.bit_count):
        anchor = s & -s
        rest = s ^ anchor
        row = [0] * (s.bit_count() + 1)
        sub = rest
        while True:
            p = anchor | sub
            cp = conn[p]
            for c, val in enumerate(gen[s ^ p]):
                if val:
                    row[c + 1] += cp * val
            if sub == 0:
                break
            sub = (sub - 1) & rest
        gen[s] = row
    return [_unpack(v, width, g.m + 1) for v in gen[size - 1]]


def tutte_full(g: SmallGraph) -> TuttePoly:
    """Full Tutte polynomial from the component/edge-count generating function.

    ``T(x, y) = sum_A (x-1)^(c(A)-1) (y-1)^(|A| - n + c(A))``.
    """
    if g.n > FULL_TUTTE_MAX_VERTICES:
        raise GraphError(f"full Tutte polynomial is limited to {FULL_TUTTE_MAX_VERTICES} vertices")
    if not is_connected(g):
        raise DisconnectedGraphError("full Tutte polynomial needs a connected graph")
    d = component_edge_table(g)
    n, m = g.n, g.m
    out = [[0] * (m - n + 2) for _ in range(n)]
    for c, row in enumerate(d):
        for j, cnt in enumerate(row):
            if not cnt:
                continue
            px, py = c - 1, j - n + c
            for a in range(px + 1):
                ca = comb(px, a) * (-1) ** (px - a)
                for b in range(py + 1):
                    out[a][b] += cnt * ca * comb(py, b) * (-1) ** (py - b)
    rows = [_trim(r) for r in out]
    while len(rows) > 1 and rows[-1] == [0]:
        rows.pop()
    return TuttePoly(tuple(tuple(r) for r in rows))
