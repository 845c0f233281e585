"""Deterministic instance builders: hardness gadgets and random corpora.

Every "path of length L" below means L edges with fresh internal
vertices, never shared between paths, so burn times stay 2 * distance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .game import GameModel, Instance, Strategy
from .graph import Graph


def _choose2(k: int) -> int:
    return k * (k - 1) // 2


@dataclass(frozen=True)
class CliqueReduction:
    """Clique-to-critical-set gadget: saving t needs a k-clique in the base."""

    instance: Instance
    base: Graph
    base_k: int
    t: int
    edge_nodes: dict[tuple[int, int], int]
    layers: tuple[tuple[int, ...], ...]  # layers[j][v] = copy of base vertex v
    path_internals: frozenset[int]  # interior vertices of the s-to-layer-0 paths

    def witness_for_clique(self, clique: Sequence[int]) -> Strategy:
        """Canonical saving strategy from a k-clique of the base graph.

        Protects the clique's layer-0 copies on the first k turns, then
        the edge nodes not covered by the clique on the remaining turns.
        """
        clique = sorted(clique)
        if len(clique) != self.base_k:
            raise ValueError("clique has the wrong size")
        placements = {}
        turn = 1
        for v in clique:
            placements[turn] = self.layers[0][v]
            turn += 1
        covered = {tuple(sorted(e)) for e in _pairs(clique) if self.base.has_edge(*e)}
        if len(covered) != _choose2(self.base_k):
            raise ValueError("vertices do not form a clique")
        for edge, node in sorted(self.edge_nodes.items()):
            if edge not in covered:
                placements[turn] = node
                turn += 1
        return Strategy.from_dict(placements)


def _pairs(vs: Sequence[int]):
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            yield (vs[i], vs[j])


def clique_gadget(base: Graph, k: int) -> CliqueReduction:
    """Instance whose answer is yes iff `base` has a k-clique.

    Layout: one node per base edge, all adjacent to the critical node t;
    m - C(k,2) stacked copies of the base vertex set joined by matchings;
    the source reaches layer 0 by fresh length-k paths; the last layer's
    copies attach to their incident edge nodes.  Budget k + m - C(k,2).
    """
    if k < 2:
        raise ValueError("clique size must be at least 2")
    m = base.m
    n_layers = m - _choose2(k)
    if n_layers < 1:
        raise ValueError("base graph needs more than C(k,2) edges")

    nb = base.n
    edges_sorted = sorted(base.edges())
    nxt = 0

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    s = fresh()
    t = fresh()
    edge_nodes = {e: fresh() for e in edges_sorted}
    layers = tuple(tuple(fresh() for _ in range(nb)) for _ in range(n_layers))
    edges: list[tuple[int, int]] = []
    internals: list[int] = []
    for node in edge_nodes.values():
        edges.append((node, t))
    for v in range(nb):
        prev = s
        for _ in range(k - 1):
            w = fresh()
            internals.append(w)
            edges.append((prev, w))
            prev = w
        edges.append((prev, layers[0][v]))
    for j in range(n_layers - 1):
        for v in range(nb):
            edges.append((layers[j][v], layers[j + 1][v]))
    last = layers[-1]
    for (u, v), node in edge_nodes.items():
        edges.append((last[u], node))
        edges.append((last[v], node))

    g = Graph(nxt, edges)
    inst = Instance(g, s, frozenset({t}), k + n_layers)
    return CliqueReduction(
        instance=inst,
        base=base,
        base_k=k,
        t=t,
        edge_nodes=edge_nodes,
        layers=layers,
        path_internals=frozenset(internals),
    )


@dataclass(frozen=True)
class DominatingSetReduction:
    """Spreading-model gadget: saving the second copy needs a dominating set."""

    instance: Instance
    base: Graph
    base_k: int
    copy1: tuple[int, ...]
    copy2: tuple[int, ...]

    def witness_for_dominating_set(self, ds: Sequence[int]) -> Strategy:
        ds = sorted(ds)
        if len(ds) > self.base_k:
            raise ValueError("dominating set exceeds the budget")
        return Strategy.from_dict(
            {i + 1: self.copy1[v] for i, v in enumerate(ds)}
        )


def domset_gadget(base: Graph, k: int) -> DominatingSetReduction:
    """Spreading-model instance: yes iff `base` has a dominating set of size <= k.

    Two copies of the base vertices; source reaches every first-copy
    vertex by a length-k path; each base edge contributes length-k paths
    first-copy to the other endpoint's second copy and length-2k paths
    back; every vertex links its two copies by a length-2k path.
    """
    if k < 1:
        raise ValueError("budget must be at least 1")
    nxt = 0

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    def path(a: int, b: int, length: int) -> None:
        prev = a
        for _ in range(length - 1):
            w = fresh()
            edges.append((prev, w))
            prev = w
        edges.append((prev, b))

    edges: list[tuple[int, int]] = []
    s = fresh()
    copy1 = tuple(fresh() for _ in range(base.n))
    copy2 = tuple(fresh() for _ in range(base.n))
    for v in range(base.n):
        path(s, copy1[v], k)
    for u, v in sorted(base.edges()):
        path(copy1[u], copy2[v], k)
        path(copy1[v], copy2[u], k)
        path(copy2[u], copy1[v], 2 * k)
        path(copy2[v], copy1[u], 2 * k)
    for v in range(base.n):
        path(copy1[v], copy2[v], 2 * k)

    g = Graph(nxt, edges)
    inst = Instance(g, s, frozenset(copy2), k)
    return DominatingSetReduction(
        instance=inst, base=base, base_k=k, copy1=copy1, copy2=copy2
    )


@dataclass(frozen=True)
class Composition:
    """OR-composition of tree instances under a fresh full binary tree."""

    instance: Instance
    offsets: tuple[int, ...]
    height: int
    padded_count: int


def _tree_leaves(g: Graph, root: int) -> frozenset[int]:
    return frozenset(v for v in g.vertices() if v != root and g.degree(v) == 1)


def compose_or(instances: Sequence[Instance]) -> Composition:
    """One instance answering yes iff some input does; budget k + log t.

    Inputs must be trees rooted at their sources with the critical set
    equal to all leaves and a shared budget; they are padded by
    duplication up to the next power of two, then hung below a full
    binary tree whose depth-h positions are the input sources.
    """
    if not instances:
        raise ValueError("need at least one instance")
    k = instances[0].budget
    for inst in instances:
        if not inst.graph.is_tree():
            raise ValueError("composition inputs must be trees")
        if inst.budget != k:
            raise ValueError("composition inputs must share the budget")
        if inst.critical != _tree_leaves(inst.graph, inst.source):
            raise ValueError("critical set must be all leaves")
    count = len(instances)
    height = max(0, math.ceil(math.log2(count)))
    padded = [instances[i % count] for i in range(2 ** height)]

    nxt = 0

    def fresh() -> int:
        nonlocal nxt
        nxt += 1
        return nxt - 1

    edges: list[tuple[int, int]] = []
    critical: set[int] = set()
    offsets = []
    # binary-tree rows 0..height-1 are fresh vertices; row `height`
    # consists of the input sources themselves
    rows: list[list[int]] = [[fresh() for _ in range(2 ** d)] for d in range(height)]
    sources_row: list[int] = []
    for inst in padded:
        off = nxt
        offsets.append(off)
        nxt += inst.graph.n
        edges.extend((u + off, v + off) for u, v in inst.graph.edges())
        critical.update(c + off for c in inst.critical)
        sources_row.append(inst.source + off)
    rows.append(sources_row)
    for d in range(height):
        for i, parent in enumerate(rows[d]):
            edges.append((parent, rows[d + 1][2 * i]))
            edges.append((parent, rows[d + 1][2 * i + 1]))
    root = rows[0][0] if height > 0 else sources_row[0]

    g = Graph(nxt, edges)
    inst = Instance(g, root, frozenset(critical), k + height)
    return Composition(
        instance=inst,
        offsets=tuple(offsets),
        height=height,
        padded_count=len(padded),
    )


def random_instance(
    kind: str,
    n: int,
    *,
    seed: int,
    density: float = 0.4,
    k_choices: Sequence[int] = (1, 2, 3),
    max_critical: int = 3,
) -> tuple[Instance, GameModel, dict]:
    """Seeded random instance; identical output for identical arguments."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if kind not in ("graph", "tree"):
        raise ValueError("kind must be 'graph' or 'tree'")
    rng = random.Random(seed)
    if kind == "tree":
        edges = [(rng.randrange(v), v) for v in range(1, n)]
    else:
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < density
        ]
    g = Graph(n, edges)
    source = rng.randrange(n)
    others = [v for v in range(n) if v != source]
    c_size = rng.randint(1, min(max_critical, len(others)))
    critical = frozenset(rng.sample(others, c_size))
    k = rng.choice(list(k_choices))
    inst = Instance(g, source, critical, k)
    provenance = {
        "generator": "random",
        "kind": kind,
        "n": n,
        "seed": seed,
        "density": density if kind == "graph" else None,
        "k": k,
    }
    return inst, GameModel.PLAIN, provenance
