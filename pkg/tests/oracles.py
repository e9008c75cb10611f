"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy import integrate


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def components(n, edges):
    uf = UnionFind(n)
    for u, v in edges:
        uf.union(u, v)
    return len({uf.find(i) for i in range(n)})


def rank(n, edges):
    return n - components(n, edges)


def tutte_rank_nullity(n, edges, x, y):
    """sum over edge subsets A of (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))."""
    x, y = Fraction(x), Fraction(y)
    edges = list(edges)
    rE = rank(n, edges)
    total = Fraction(0)
    for mask in range(1 << len(edges)):
        sub = [e for i, e in enumerate(edges) if mask >> i & 1]
        rA = rank(n, sub)
        total += (x - 1) ** (rE - rA) * (y - 1) ** (len(sub) - rA)
    return total


def connected_spanning_by_size(n, edges):
    """c(V, j) by listing every edge subset."""
    edges = list(edges)
    counts = [0] * (len(edges) + 1)
    for mask in range(1 << len(edges)):
        sub = [e for i, e in enumerate(edges) if mask >> i & 1]
        if components(n, sub) == 1:
            counts[len(sub)] += 1
    return counts


def spanning_tree_count(n, edges):
    edges = list(edges)
    return sum(
        1 for combo in itertools.combinations(edges, n - 1) if components(n, combo) == 1
    )


def iso_classes(n):
    """One edge list per isomorphism class of simple graphs on n labelled vertices.

    Every edge subset of K_n is generated and mapped to its minimum image
    over all vertex permutations.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {p: k for k, p in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for k, (i, j) in enumerate(pairs):
            a, b = sorted((perm[i], perm[j]))
            image |= ((masks >> k) & 1) << index[(a, b)]
        np.minimum(best, image, out=best)
    reps = sorted(set(int(b) for b in best))
    return [[p for k, p in enumerate(pairs) if r >> k & 1] for r in reps]


def connected_iso_classes(max_n):
    out = []
    for n in range(1, max_n + 1):
        out += [(n, e) for e in iso_classes(n) if components(n, e) == 1]
    return out


def kasteleyn_cylinder_entropy(W):
    """Close-packed dimer entropy per site of an infinitely long cylinder of even circumference W.

    Kasteleyn's product formula with the antiperiodic momenta that carry the
    dominant Pfaffian, after the longitudinal integral is done in closed form.
    """
    return sum(math.asinh(abs(math.sin((2 * j + 1) * math.pi / W))) for j in range(W)) / (2 * W)


def kasteleyn_plane_entropy():
    """Square-lattice dimer entropy (1/16 pi^2) int int ln(4 sin^2 a + 4 sin^2 b) over [0, 2pi]^2."""

    def inner(b):
        # closed form of the a-integral: 2pi * 2 asinh|sin b|
        return 4 * math.pi * math.asinh(abs(math.sin(b)))

    val, _ = integrate.quad(inner, 0, 2 * math.pi, limit=200)
    return val / (16 * math.pi**2)


def dense_dominant(matrix):
    w = np.linalg.eigvals(matrix)
    return float(max(w.real))


def w1_eigenvalue(t):
    return (1 + math.sqrt(1 + 4 * t)) / 2


def window_brute(k, window):
    """Distinct canonical connected k-clusters within a site window, written without the package."""
    dimers = [(x, y, "H") for x in range(window - 1) for y in range(window)]
    dimers += [(x, y, "V") for x in range(window) for y in range(window - 1)]

    def sites(d):
        x, y, a = d
        return {(x, y), (x + 1, y) if a == "H" else (x, y + 1)}

    found = set()
    for combo in itertools.combinations(dimers, k):
        ss = [sites(d) for d in combo]
        uf = UnionFind(k)
        for i in range(k):
            for j in range(i + 1, k):
                if ss[i] & ss[j]:
                    uf.union(i, j)
        if len({uf.find(i) for i in range(k)}) != 1:
            continue
        mx = min(d[0] for d in combo)
        my = min(d[1] for d in combo)
        found.add(tuple(sorted((x - mx, y - my, a) for x, y, a in combo)))
    return found
