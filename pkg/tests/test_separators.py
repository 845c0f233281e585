from __future__ import annotations

import itertools

import pytest

from firecut.generators import random_instance
from firecut.graph import Graph, reachable_set
from firecut.separators import (
    enumerate_important_separators,
    farthest_separator,
    is_minimal_separator,
    is_separator,
    min_separator,
    smallest_important_separator,
    tight_sequence,
)

from .reference import (
    ref_important_separators,
    ref_is_separator,
    ref_min_separator_size,
)


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def test_min_separator_on_path():
    g = path_graph(4)  # s-v1-v2-t
    size, witness = min_separator(g, {0}, {3})
    assert size == 1
    assert witness in ({1}, {2})
    assert is_separator(g, {0}, {3}, witness)


def test_min_separator_two_disjoint_paths():
    # s-a-t and s-b-t
    g = Graph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
    size, witness = min_separator(g, {0}, {3})
    assert size == 2 and witness == {1, 2}


def test_min_separator_adjacent_none():
    g = Graph(2, [(0, 1)])
    assert min_separator(g, {0}, {1}) is None


def test_min_separator_overlap_rejected():
    g = path_graph(3)
    with pytest.raises(ValueError):
        min_separator(g, {0, 1}, {1, 2})


def test_min_separator_disconnected_is_zero():
    g = Graph(4, [(0, 1), (2, 3)])
    assert min_separator(g, {0}, {3}) == (0, frozenset())


def test_enumerate_important_path_k1():
    g = path_graph(4)
    assert enumerate_important_separators(g, {0}, {3}, 1) == [frozenset({2})]


def test_enumerate_important_diamond_with_cutvertex():
    # s-x, x-a, x-b, a-t, b-t
    g = Graph(5, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)])
    got = enumerate_important_separators(g, {0}, {4}, 2)
    assert got == [frozenset({1}), frozenset({2, 3})]


def test_enumerate_important_empty_when_min_cut_too_big():
    g = Graph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
    assert enumerate_important_separators(g, {0}, {3}, 1) == []


def test_smallest_important_on_path():
    g = path_graph(4)
    assert smallest_important_separator(g, {0}, {3}) == {2}


def test_smallest_important_diamond():
    g = Graph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
    assert smallest_important_separator(g, {0}, {3}) == {1, 2}


def test_smallest_important_forced_neighborhood():
    # only candidate of size lambda is N(Y) minus Y itself
    g = Graph(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
    assert smallest_important_separator(g, {0}, {4}) == {3}


def seeded_graphs(count, n, seed0, density=0.4):
    for i in range(count):
        inst, _, _ = random_instance("graph", n, seed=seed0 + i, density=density)
        yield inst.graph


def test_enumeration_matches_bruteforce_reference():
    checked = 0
    for idx, g in enumerate(seeded_graphs(120, 7, 100)):
        edges = list(g.edges())
        x, y = 0, g.n - 1
        if y in g.neighbors(x):
            continue
        for k in (1, 2, 3):
            got = enumerate_important_separators(g, {x}, {y}, k)
            want = ref_important_separators(g.n, edges, {x}, {y}, k)
            assert got == want, (edges, k)
            assert len(got) <= 4**k
            checked += 1
    assert checked > 100


def test_enumeration_multi_terminal_matches_reference():
    for idx, g in enumerate(seeded_graphs(40, 8, 900)):
        X, Y = {0, 1}, {g.n - 1}
        if any(g.neighbors(x) & Y for x in X):
            continue
        got = enumerate_important_separators(g, X, Y, 2)
        want = ref_important_separators(g.n, list(g.edges()), X, Y, 2)
        assert got == want


def test_min_separator_size_matches_reference():
    for g in seeded_graphs(80, 7, 300):
        x, y = 0, g.n - 1
        got = min_separator(g, {x}, {y})
        want = ref_min_separator_size(g.n, list(g.edges()), {x}, {y})
        if want is None:
            assert got is None
        else:
            assert got is not None and got[0] == want
            assert ref_is_separator(g.n, list(g.edges()), {x}, {y}, got[1])
            assert len(got[1]) == want


def test_every_enumerated_separator_is_verified_minimal():
    for g in seeded_graphs(40, 7, 500):
        x, y = 0, g.n - 1
        if y in g.neighbors(x):
            continue
        for S in enumerate_important_separators(g, {x}, {y}, 3):
            assert is_minimal_separator(g, {x}, {y}, S)


def test_farthest_separator_is_uncovered():
    for g in seeded_graphs(60, 7, 700):
        x, y = 0, g.n - 1
        for k in (1, 2, 3):
            S = farthest_separator(g, {x}, {y}, k)
            if S is None:
                continue
            assert is_minimal_separator(g, {x}, {y}, S)
            reach = reachable_set(g, {x}, S)
            # no separator of size <= k covers S
            ground = [v for v in range(g.n) if v not in {x, y}]
            for r in range(k + 1):
                for T in itertools.combinations(ground, r):
                    T = frozenset(T)
                    if is_separator(g, {x}, {y}, T):
                        assert not (reachable_set(g, {x}, T) > reach)


# --- tight sequences -------------------------------------------------


def check_tight_invariants(g, seq, brute=True):
    """Full audit, including the brute-force no-separator-in-gap checks."""
    seq.verify(g)
    H, S = seq.layers, seq.separators
    X, Y, k = seq.x_side, seq.y_side, seq.order
    if not brute:
        return
    ground = [v for v in range(g.n) if v not in X | Y]
    regions = []
    if S:
        regions.append(H[1])  # separators are disjoint from X anyway
        for i in range(1, len(H) - 1):
            regions.append(H[i + 1] - g.closed_neighborhood_of(H[i]))
    beyond = frozenset(range(g.n)) - g.closed_neighborhood_of(H[-1])
    regions.append(beyond)
    for r in range(k + 1):
        for T in itertools.combinations(ground, r):
            T = frozenset(T)
            if not is_separator(g, X, Y, T):
                continue
            for reg in regions:
                assert not (T <= reg), (sorted(T), sorted(reg))


def test_tight_sequence_path_example():
    g = path_graph(5)  # s-v1-v2-v3-t
    seq = tight_sequence(g, {0}, {4}, 1)
    assert seq is not None
    assert seq.q == 3
    assert list(seq.separators) == [{1}, {2}, {3}]
    check_tight_invariants(g, seq)


def test_tight_sequence_adjacent_none():
    g = Graph(2, [(0, 1)])
    assert tight_sequence(g, {0}, {1}, 3) is None


def test_tight_sequence_k4_too_small_order():
    g = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert tight_sequence(g, {0}, {1}, 1) is None


def test_tight_sequence_cutvertex_then_pair():
    # s-x, x-a, x-b, a-t, b-t: layers must record both {x} and {a,b}
    g = Graph(5, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)])
    seq = tight_sequence(g, {0}, {4}, 2)
    assert seq is not None
    assert list(seq.separators) == [{1}, {2, 3}]
    check_tight_invariants(g, seq)


def test_tight_sequence_random_audit():
    audited = 0
    for g in seeded_graphs(60, 7, 1100):
        for k in (1, 2, 3):
            base = min_separator(g, {0}, {g.n - 1})
            if base is None or base[0] == 0:
                continue
            seq = tight_sequence(g, {0}, {g.n - 1}, k)
            if seq is None:
                continue
            check_tight_invariants(g, seq)
            audited += 1
    assert audited > 40
