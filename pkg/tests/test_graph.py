from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from firecut.graph import Graph, bfs_distances, reachable_set

INF = math.inf


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def test_neighbors_on_path():
    g = path_graph(3)  # s-a-b with ids 0,1,2
    assert g.neighbors(1) == {0, 2}
    assert g.closed_neighbors(1) == {0, 1, 2}


def test_neighbors_isolated_vertex():
    g = Graph(3, [(0, 1)])
    assert g.neighbors(2) == frozenset()


def test_neighbors_triangle_symmetry():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert all(len(g.neighbors(v)) == 2 for v in g.vertices())


def test_neighbors_out_of_range():
    g = path_graph(2)
    with pytest.raises(ValueError):
        g.neighbors(2)


def test_graph_rejects_self_loop_and_range():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])


def test_parallel_edges_collapse():
    g = Graph(2, [(0, 1), (1, 0)])
    assert g.m == 1


def test_bfs_distances_path():
    g = path_graph(4)
    dist = bfs_distances(g, 0)
    assert dist == [0, 1, 2, 3]


def test_bfs_distances_forbidden_cuts():
    g = path_graph(4)
    dist = bfs_distances(g, 0, frozenset({1}))
    assert dist[2] == INF and dist[3] == INF


def test_bfs_source_is_zero():
    g = path_graph(4)
    assert bfs_distances(g, 2)[2] == 0


def test_bfs_forbidden_source_rejected():
    g = path_graph(2)
    with pytest.raises(ValueError):
        bfs_distances(g, 0, frozenset({0}))


def test_reachable_set_path_blocked():
    g = path_graph(4)  # s-v1-v2-t
    assert reachable_set(g, {0}, frozenset({2})) == {0, 1}


def test_reachable_set_empty_blockers():
    g = path_graph(5)
    assert reachable_set(g, {0}, frozenset()) == set(range(5))


def test_reachable_set_sealed_neighborhood():
    g = Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert reachable_set(g, {0}, g.neighbors(0)) == {0}


def test_reachable_overlap_rejected():
    g = path_graph(3)
    with pytest.raises(ValueError):
        reachable_set(g, {0}, frozenset({0}))


def test_induced_subgraph_relabels():
    g = Graph(5, [(0, 2), (2, 4), (1, 3)])
    sub, old = g.induced([0, 2, 4])
    assert old == (0, 2, 4)
    assert sub.n == 3 and set(sub.edges()) == {(0, 1), (1, 2)}


def test_tree_and_connectivity_checks():
    assert path_graph(4).is_tree()
    assert not Graph(4, [(0, 1), (1, 2), (2, 0)]).is_connected()
    assert Graph(3, [(0, 1)]).connected_components() == [
        frozenset({0, 1}),
        frozenset({2}),
    ]


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    flags = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, f in zip(pairs, flags) if f])


@settings(max_examples=120, deadline=None)
@given(small_graphs(), st.data())
def test_reachable_monotone_in_blockers(g, data):
    x = data.draw(st.integers(min_value=0, max_value=g.n - 1))
    rest = [v for v in range(g.n) if v != x]
    s_small = frozenset(data.draw(st.sets(st.sampled_from(rest)))) if rest else frozenset()
    extra = [v for v in rest if v not in s_small]
    s_big = s_small | (
        frozenset(data.draw(st.sets(st.sampled_from(extra)))) if extra else frozenset()
    )
    assert reachable_set(g, {x}, s_big) <= reachable_set(g, {x}, s_small)


@settings(max_examples=120, deadline=None)
@given(small_graphs(), st.data())
def test_reachable_with_no_blockers_is_component_union(g, data):
    x = data.draw(st.integers(min_value=0, max_value=g.n - 1))
    comp = next(c for c in g.connected_components() if x in c)
    assert reachable_set(g, {x}, frozenset()) == comp


@settings(max_examples=120, deadline=None)
@given(small_graphs(), st.data())
def test_bfs_adjacent_distances_differ_by_at_most_one(g, data):
    x = data.draw(st.integers(min_value=0, max_value=g.n - 1))
    dist = bfs_distances(g, x)
    for u, v in g.edges():
        if dist[u] != INF and dist[v] != INF:
            assert abs(dist[u] - dist[v]) <= 1
