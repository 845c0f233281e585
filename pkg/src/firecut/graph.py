"""Simple undirected graphs over dense integer vertex ids."""

from __future__ import annotations

import math
from typing import Iterable, Iterator

INF = math.inf


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Adjacency is exposed both as frozensets (convenient) and as int
    bitmasks (fast set algebra in solver hot paths).
    """

    __slots__ = ("n", "_adj", "_masks", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
                m += 1
        self.n = n
        self._m = m
        self._adj = tuple(frozenset(s) for s in adj)
        self._masks = tuple(sum(1 << w for w in s) for s in adj)

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adj[v] | {v}

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def neighborhood_of(self, vs: Iterable[int]) -> frozenset[int]:
        """Open neighborhood of a vertex set (excludes the set itself)."""
        vs = set(vs)
        out: set[int] = set()
        for v in vs:
            out |= self._adj[v]
        return frozenset(out - vs)

    def closed_neighborhood_of(self, vs: Iterable[int]) -> frozenset[int]:
        vs = set(vs)
        return self.neighborhood_of(vs) | frozenset(vs)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on `keep`; returns (graph, old-id table).

        New ids follow the sorted order of `keep`; old_ids[new] = old.
        """
        old_ids = tuple(sorted(set(keep)))
        index = {old: new for new, old in enumerate(old_ids)}
        for old in old_ids:
            self._check(old)
        edges = [
            (index[u], index[v])
            for u in old_ids
            for v in self._adj[u]
            if u < v and v in index
        ]
        return Graph(len(old_ids), edges), old_ids

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(reachable_set(self, {0}, frozenset())) == self.n

    def is_tree(self) -> bool:
        return self.is_connected() and self._m == self.n - 1

    def connected_components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for v in range(self.n):
            if v not in seen:
                comp = reachable_set(self, {v}, frozenset())
                seen |= comp
                comps.append(comp)
        return comps

    def _check(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


def bfs_distances(
    g: Graph, source: int, forbidden: frozenset[int] | set[int] = frozenset()
) -> list[float]:
    """BFS distances from `source` in g minus `forbidden`; INF if unreachable."""
    g._check(source)
    if source in forbidden:
        raise ValueError("source may not be forbidden")
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in g._adj[u]:
                if dist[w] == INF and w not in forbidden:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def reachable_set(
    g: Graph, X: Iterable[int], S: frozenset[int] | set[int]
) -> frozenset[int]:
    """Vertices reachable from X in g minus S (X itself included)."""
    X = set(X)
    if X & set(S):
        raise ValueError("X and S must be disjoint")
    for v in X:
        g._check(v)
    seen = set(X)
    stack = list(X)
    while stack:
        u = stack.pop()
        for w in g._adj[u]:
            if w not in seen and w not in S:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def reachable_mask(masks: tuple[int, ...], start: int, blocked: int) -> int:
    """Bitmask closure of `start` under adjacency, never entering `blocked`."""
    seen = start & ~blocked
    frontier = seen
    while frontier:
        grow = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            grow |= masks[v]
        frontier = grow & ~seen & ~blocked
        seen |= frontier
    return seen
