"""Vertex separators: minimum cuts, important separators, tight sequences.

All separators here are vertex sets disjoint from both terminal sets.
Minimum cuts come from unit-vertex-capacity max flow (vertex splitting);
`enumerate_important_separators` uses the standard branching on the
minimum cut pushed toward the target side, then filters the candidates
against the covering/domination definitions so the output is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, reachable_set

_INF = 1 << 30


class _Flow:
    """Residual network for unit-vertex-capacity X-Y flow.

    Vertex v splits into nodes 2v (in) and 2v+1 (out); terminals and
    `removed` vertices are handled by capacity choice / omission.
    """

    def __init__(self, g: Graph, X: frozenset[int], Y: frozenset[int],
                 removed: frozenset[int]):
        self.n = g.n
        self.src = 2 * g.n
        self.sink = 2 * g.n + 1
        self.adj: list[list[list[int]]] = [[] for _ in range(2 * g.n + 2)]
        terminals = X | Y
        for v in range(g.n):
            if v in removed:
                continue
            cap = _INF if v in terminals else 1
            self._add(2 * v, 2 * v + 1, cap)
        for u, v in g.edges():
            if u in removed or v in removed:
                continue
            self._add(2 * u + 1, 2 * v, _INF)
            self._add(2 * v + 1, 2 * u, _INF)
        for x in X:
            self._add(self.src, 2 * x, _INF)
        for y in Y:
            self._add(2 * y + 1, self.sink, _INF)

    def _add(self, a: int, b: int, cap: int) -> None:
        # arc entries are [to, residual, index of reverse entry]
        self.adj[a].append([b, cap, len(self.adj[b])])
        self.adj[b].append([a, 0, len(self.adj[a]) - 1])

    def _augment(self) -> int:
        parent: dict[int, tuple[int, int]] = {self.src: (-1, -1)}
        queue = deque([self.src])
        while queue:
            a = queue.popleft()
            if a == self.sink:
                break
            for i, (b, cap, _) in enumerate(self.adj[a]):
                if cap > 0 and b not in parent:
                    parent[b] = (a, i)
                    queue.append(b)
        if self.sink not in parent:
            return 0
        path = []
        node = self.sink
        while node != self.src:
            a, i = parent[node]
            path.append((a, i))
            node = a
        push = min(self.adj[a][i][1] for a, i in path)
        for a, i in path:
            arc = self.adj[a][i]
            arc[1] -= push
            self.adj[arc[0]][arc[2]][1] += push
        return push

    def max_flow(self, limit: int) -> int:
        """Total flow, stopping as soon as it exceeds `limit`."""
        flow = 0
        while flow <= limit:
            pushed = self._augment()
            if pushed == 0:
                break
            flow += pushed
        return flow

    def cut_toward_sink(self, X: frozenset[int], Y: frozenset[int],
                        removed: frozenset[int]) -> frozenset[int]:
        """Min cut closest to Y: split arcs crossing into the sink side."""
        can_reach = [False] * (2 * self.n + 2)
        can_reach[self.sink] = True
        queue = deque([self.sink])
        while queue:
            b = queue.popleft()
            for to, _, rev in self.adj[b]:
                # residual arc to->b exists iff the reverse entry has capacity
                if not can_reach[to] and self.adj[to][rev][1] > 0:
                    can_reach[to] = True
                    queue.append(to)
        cut = set()
        for v in range(self.n):
            if v in X or v in Y or v in removed:
                continue
            if can_reach[2 * v + 1] and not can_reach[2 * v]:
                cut.add(v)
        return frozenset(cut)


def _min_cut(g: Graph, X: frozenset[int], Y: frozenset[int],
             removed: frozenset[int] = frozenset(),
             limit: int | None = None):
    """(size, cut-closest-to-Y) or None when no separator exists at all.

    With `limit`, returns (size_exceeding, None) as soon as the flow
    passes the limit; size_exceeding is then only a lower bound.
    """
    for x in X:
        if g.neighbors(x) & Y:
            return None
    cap = g.n if limit is None else limit
    flow = _Flow(g, X, Y, removed)
    value = flow.max_flow(cap)
    if value > cap:
        return value, None
    return value, flow.cut_toward_sink(X, Y, removed)


def _as_sets(X: Iterable[int], Y: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    X, Y = frozenset(X), frozenset(Y)
    if not X or not Y:
        raise ValueError("terminal sets must be nonempty")
    if X & Y:
        raise ValueError("terminal sets must be disjoint")
    return X, Y


def is_separator(g: Graph, X: Iterable[int], Y: Iterable[int],
                 S: Iterable[int]) -> bool:
    X, Y = frozenset(X), frozenset(Y)
    S = frozenset(S)
    if S & (X | Y):
        return False
    return not (reachable_set(g, X, S) & Y)


def is_minimal_separator(g: Graph, X: Iterable[int], Y: Iterable[int],
                         S: Iterable[int]) -> bool:
    S = frozenset(S)
    if not is_separator(g, X, Y, S):
        return False
    return all(not is_separator(g, X, Y, S - {v}) for v in S)


def covers(g: Graph, X: Iterable[int], S1: Iterable[int], S: Iterable[int]) -> bool:
    """S1 covers S wrt X: reachability side of S1 strictly contains S's."""
    r1 = reachable_set(g, X, frozenset(S1))
    r = reachable_set(g, X, frozenset(S))
    return r1 > r


def dominates(g: Graph, X: Iterable[int], S1: Iterable[int], S: Iterable[int]) -> bool:
    S1, S = frozenset(S1), frozenset(S)
    return len(S1) <= len(S) and covers(g, X, S1, S)


def min_separator(g: Graph, X: Iterable[int], Y: Iterable[int]
                  ) -> tuple[int, frozenset[int]] | None:
    """Smallest X-Y separator size plus one witness, or None if X touches Y.

    The witness is the minimum cut pushed toward Y (deterministic).
    """
    X, Y = _as_sets(X, Y)
    res = _min_cut(g, X, Y)
    if res is None:
        return None
    return res


def smallest_important_separator(g: Graph, X: Iterable[int], Y: Iterable[int]
                                 ) -> frozenset[int] | None:
    """The unique minimum-size important separator (min cut closest to Y)."""
    res = min_separator(g, X, Y)
    return None if res is None else res[1]


def _is_important(g: Graph, X: frozenset[int], Y: frozenset[int],
                  S: frozenset[int]) -> bool:
    if not is_minimal_separator(g, X, Y, S):
        return False
    if not S:
        return True
    reach = reachable_set(g, X, S)
    for v in S:
        # a dominating separator exists iff some v in S can be absorbed
        # into the reachability side with a cut no larger than |S|
        res = _min_cut(g, reach | {v} | X, Y, limit=len(S))
        if res is not None and res[0] <= len(S):
            return False
    return True


def enumerate_important_separators(g: Graph, X: Iterable[int], Y: Iterable[int],
                                   k: int) -> list[frozenset[int]]:
    """All important X-Y separators of size at most k, smallest first.

    Branches on the vertex of smallest id in the minimum cut pushed
    toward Y (in / out of the separator); the generated superset is
    filtered down to exactly the important separators and deduplicated.
    The count is asserted against the 4^k bound.
    """
    X, Y = _as_sets(X, Y)
    if k < 0:
        return []
    candidates: set[frozenset[int]] = set()

    def gen(x_side: frozenset[int], chosen: frozenset[int], budget: int) -> None:
        res = _min_cut(g, x_side, Y, removed=chosen, limit=budget)
        if res is None:
            return
        lam, cut = res
        if lam > budget:
            return
        if lam == 0:
            candidates.add(chosen)
            return
        v = min(cut)
        gen(x_side, chosen | {v}, budget - 1)
        gen(x_side | {v}, chosen, budget)

    gen(X, frozenset(), k)
    out = sorted(
        (S for S in candidates if len(S) <= k and _is_important(g, X, Y, S)),
        key=lambda S: (len(S), sorted(S)),
    )
    assert len(out) <= 4 ** k, "important separator count exceeded 4^k"
    return out


def farthest_separator(g: Graph, X: Iterable[int], Y: Iterable[int],
                       k: int) -> frozenset[int] | None:
    """An important separator of size <= k covered by no separator of size <= k.

    Found by starting from the minimum cut pushed toward Y and greedily
    absorbing cut vertices into the reachability side while some cut of
    size <= k still fits beyond them.
    """
    X, Y = _as_sets(X, Y)
    res = _min_cut(g, X, Y, limit=k)
    if res is None or res[0] > k:
        return None
    _, S = res
    reach = reachable_set(g, X, S)
    improved = True
    while improved:
        improved = False
        for v in sorted(S):
            pushed = _min_cut(g, reach | {v} | X, Y, limit=k)
            if pushed is None or pushed[0] > k:
                continue
            S = pushed[1]
            reach = reachable_set(g, X, S)
            improved = True
            break
    return S


@dataclass(frozen=True)
class SeparatorSequence:
    """Tight reachability sequence between X and Y of order k.

    layers = (H_0, ..., H_q) with H_0 = X and H_i the reachability side
    of separator S_i; separators = (S_1, ..., S_q), pairwise disjoint
    minimal X-Y separators of size <= k with strictly growing
    reachability sides.  H_1 may coincide with H_0 (S_1 inside N(X));
    beyond that the chain is strict.  No X-Y separator of size <= k
    fits wholly inside a single gap between consecutive layers, wholly
    inside H_1, or wholly beyond N[H_q].
    """

    x_side: frozenset[int]
    y_side: frozenset[int]
    order: int
    layers: tuple[frozenset[int], ...]
    separators: tuple[frozenset[int], ...]

    @property
    def q(self) -> int:
        return len(self.separators)

    def verify(self, g: Graph) -> None:
        """Assert the cheap structural invariants (not the brute-force ones)."""
        H, S = self.layers, self.separators
        assert len(H) == len(S) + 1
        assert H[0] == self.x_side
        n_closed_y = g.closed_neighborhood_of(self.y_side)
        for i, h in enumerate(H):
            assert self.x_side <= h, "layers must contain X"
            assert not (h & n_closed_y), "layers must avoid N[Y]"
            if i >= 2:
                assert H[i - 1] < h, "layer chain must grow strictly"
        if len(H) >= 2:
            assert H[0] <= H[1]
        for i, sep in enumerate(S, start=1):
            assert len(sep) <= self.order
            assert sep == g.neighborhood_of(H[i])
            assert H[i] == reachable_set(g, self.x_side, sep)
            assert is_minimal_separator(g, self.x_side, self.y_side, sep)
            for v in sep:
                assert reachable_set(g, {v}, H[i]) & self.y_side, \
                    "separator vertices must reach Y beyond the layer"
        for i in range(len(S)):
            for j in range(i + 1, len(S)):
                assert not (S[i] & S[j]), "separators must be disjoint"


def tight_sequence(g: Graph, X: Iterable[int], Y: Iterable[int],
                   k: int) -> SeparatorSequence | None:
    """Tight (X,Y)-reachability sequence of order k, or None when no
    X-Y separator of size <= k exists.

    Peels farthest separators toward X: each round finds the separator
    pushed fully toward the current target, then recurses with that
    separator as the new target until X can no longer be cut off.
    """
    X, Y = _as_sets(X, Y)
    res = _min_cut(g, X, Y, limit=k)
    if res is None or res[0] > k:
        return None
    if res[0] == 0:
        # the empty separator would fit beyond any last layer, so no
        # tight sequence exists; callers must handle separation first
        raise ValueError("X and Y are already separated")
    outer_first: list[frozenset[int]] = []
    target = Y
    while True:
        S = farthest_separator(g, X, target, k)
        assert S is not None
        outer_first.append(S)
        inner = _min_cut(g, X, S, limit=k)
        if inner is None or inner[0] > k:
            break
        target = S
    seps = tuple(reversed(outer_first))
    layers = (frozenset(X),) + tuple(reachable_set(g, X, s) for s in seps)
    seq = SeparatorSequence(x_side=X, y_side=Y, order=k,
                            layers=layers, separators=seps)
    seq.verify(g)
    return seq
