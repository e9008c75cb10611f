"""Connected clusters of dimers on Z^2, up to translation, and their overlap graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, NamedTuple

from .graph import SmallGraph, build_graph, is_connected
from .tutte import DisconnectedGraphError, ursell

Axis = Literal["H", "V"]
Site = tuple[int, int]

MAX_K = 8

_STEP = {"H": (1, 0), "V": (0, 1)}


class Dimer(NamedTuple):
    x: int
    y: int
    axis: Axis

    def sites(self) -> tuple[Site, Site]:
        dx, dy = _STEP[self.axis]
        return (self.x, self.y), (self.x + dx, self.y + dy)

    def shifted(self, dx: int, dy: int) -> "Dimer":
        return Dimer(self.x + dx, self.y + dy, self.axis)

    @classmethod
    def from_sites(cls, a: Site, b: Site) -> "Dimer":
        a, b = min(a, b), max(a, b)
        diff = (b[0] - a[0], b[1] - a[1])
        if diff == (1, 0):
            return cls(a[0], a[1], "H")
        if diff == (0, 1):
            return cls(a[0], a[1], "V")
        raise ValueError(f"sites {a} and {b} are not lattice neighbours")


@dataclass(frozen=True, order=True)
class Cluster:
    dimers: tuple[Dimer, ...]

    def __len__(self) -> int:
        return len(self.dimers)

    def sites(self) -> set[Site]:
        return {s for d in self.dimers for s in d.sites()}

    def translate(self, dx: int, dy: int) -> "Cluster":
        return Cluster(tuple(sorted(d.shifted(dx, dy) for d in self.dimers)))

    def to_json(self) -> list:
        return [[d.x, d.y, d.axis] for d in self.dimers]

    @classmethod
    def from_json(cls, rows: Iterable) -> "Cluster":
        return canonicalize([Dimer(int(x), int(y), a) for x, y, a in rows])


def canonicalize(dimers: Iterable[Dimer]) -> Cluster:
    """Translate so the occupied sites start at x = 0 and y = 0, then sort."""
    dimers = [Dimer(*d) for d in dimers]
    if len(set(dimers)) != len(dimers):
        raise ValueError("cluster contains a repeated dimer")
    if not dimers:
        return Cluster(())
    # the base site is the lower-left site of each dimer
    mx = min(d.x for d in dimers)
    my = min(d.y for d in dimers)
    return Cluster(tuple(sorted(d.shifted(-mx, -my) for d in dimers)))


_SYMMETRIES = (
    lambda x, y: (x, y),
    lambda x, y: (-y, x),
    lambda x, y: (-x, -y),
    lambda x, y: (y, -x),
    lambda x, y: (-x, y),
    lambda x, y: (x, -y),
    lambda x, y: (y, x),
    lambda x, y: (-y, -x),
)


def canonicalize_symmetric(dimers: Iterable[Dimer]) -> Cluster:
    """Canonical representative under translations and the 8 lattice symmetries."""
    dimers = list(dimers)
    return min(
        canonicalize(Dimer.from_sites(*(f(*s) for s in d.sites())) for d in dimers)
        for f in _SYMMETRIES
    )


def overlap_graph(c: Cluster) -> SmallGraph:
    """Vertex i is the i-th dimer; i and j are joined when the dimers share a site."""
    if len(c) > 16:
        raise ValueError("overlap graphs are limited to 16 dimers")
    site_sets = [set(d.sites()) for d in c.dimers]
    edges = [
        (i, j)
        for i in range(len(site_sets))
        for j in range(i + 1, len(site_sets))
        if site_sets[i] & site_sets[j]
    ]
    return build_graph(max(len(c), 1), edges)


def _touching(site: Site) -> tuple[Dimer, ...]:
    x, y = site
    return (Dimer(x, y, "H"), Dimer(x - 1, y, "H"), Dimer(x, y, "V"), Dimer(x, y - 1, "V"))


def grow(c: Cluster, symmetric: bool = False) -> set[Cluster]:
    """All canonical clusters obtained by adding one dimer that overlaps ``c``."""
    canon = canonicalize_symmetric if symmetric else canonicalize
    present = set(c.dimers)
    out = set()
    for s in c.sites():
        for d in _touching(s):
            if d not in present:
                out.add(canon(c.dimers + (d,)))
    return out


def enumerate_clusters(k: int, symmetric: bool = False) -> Iterator[Cluster]:
    """Every connected k-dimer cluster exactly once, in lexicographic order.

    Clusters are grown one overlapping dimer at a time; each level is
    deduplicated through its canonical form before the next is built.
    """
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}], got {k}")
    canon = canonicalize_symmetric if symmetric else canonicalize
    level = {canon([Dimer(0, 0, "H")]), canon([Dimer(0, 0, "V")])}
    for _ in range(k - 1):
        nxt: set[Cluster] = set()
        for c in level:
            nxt |= grow(c, symmetric)
        level = nxt
    yield from sorted(level)


def psi_of_cluster(c: Cluster) -> int:
    g = overlap_graph(c)
    if not is_connected(g):
        raise DisconnectedGraphError("the cluster's overlap graph is disconnected")
    return ursell(g)


def cluster_record(c: Cluster, with_psi: bool = True) -> dict:
    rec: dict = {"dimers": c.to_json()}
    if with_psi:
        rec["psi"] = psi_of_cluster(c)
    return rec


def window_dimers(w: int) -> list[Dimer]:
    """Dimers with both sites in the w x w site window anchored at the origin."""
    out = [Dimer(x, y, "H") for x in range(w - 1) for y in range(w)]
    out += [Dimer(x, y, "V") for x in range(w) for y in range(w - 1)]
    return sorted(out)


def brute_force_clusters(k: int, window: int) -> set[Cluster]:
    """Canonical connected k-clusters among all k-subsets of a site window."""
    from itertools import combinations

    found = set()
    for combo in combinations(window_dimers(window), k):
        c = Cluster(combo)
        if is_connected(overlap_graph(c)):
            found.add(canonicalize(combo))
    return found
