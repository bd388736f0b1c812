import itertools
import math
from fractions import Fraction as F

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tsppoly.edgespace import EdgeSpace, edge_pairs
from tsppoly.multigraph import (
    HamiltonianCycle,
    Multigraph,
    ShortcutTriple,
    _connected_union_find,
    cycle_vector,
    degree,
    enumerate_eulerian_connected,
    enumerate_hamiltonian_cycles,
    enumerate_shortcut_triples,
    is_connected_spanning,
    is_eulerian_connected,
    remove_vertex_components,
    sample_eulerian_connected,
    shortcut_vector,
)

TRIANGLE = Multigraph.from_edges([(1, 2), (1, 3), (2, 3)], 3)
BOWTIE = Multigraph.from_edges(
    [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)], 5
)


def test_degree_examples():
    assert degree(TRIANGLE, 1) == 2
    doubled = Multigraph.from_edges([(1, 2), (1, 2)], 3)
    assert degree(doubled, 1) == 2
    assert degree(doubled, 3) == 0
    for n in (4, 6, 8):
        cyc = cycle_vector(HamiltonianCycle(tuple(range(1, n + 1))))
        assert all(degree(cyc, v) == 2 for v in range(1, n + 1))
    with pytest.raises(ValueError):
        degree(TRIANGLE, 4)


def test_connected_examples():
    cyc5 = cycle_vector(HamiltonianCycle((1, 2, 3, 4, 5)))
    assert is_connected_spanning(cyc5)
    assert not is_connected_spanning(Multigraph.from_edges([(1, 2), (1, 2)], 3))
    two_triangles = Multigraph.from_edges(
        [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)], 6
    )
    assert not is_connected_spanning(two_triangles)


def test_eulerian_examples():
    assert is_eulerian_connected(cycle_vector(HamiltonianCycle((1, 2, 3, 4))))
    path = Multigraph.from_edges([(1, 2), (2, 3)], 3)
    assert not is_eulerian_connected(path)
    g = Multigraph.from_edges([(1, 2), (1, 3), (2, 3), (1, 4), (1, 4)], 4)
    assert is_eulerian_connected(g)


def test_remove_vertex_components():
    assert remove_vertex_components(BOWTIE, 3) == [
        frozenset({1, 2}),
        frozenset({4, 5}),
    ]
    cyc5 = cycle_vector(HamiltonianCycle((1, 2, 3, 4, 5)))
    assert remove_vertex_components(cyc5, 1) == [frozenset({2, 3, 4, 5})]
    doubled = Multigraph.from_edges([(1, 2), (1, 2)], 4)
    assert remove_vertex_components(doubled, 1) == [
        frozenset({2}),
        frozenset({3}),
        frozenset({4}),
    ]
    with pytest.raises(ValueError):
        remove_vertex_components(doubled, 5)


def test_cycle_vector_examples():
    assert cycle_vector(HamiltonianCycle((1, 2, 3))).mult == (1, 1, 1)
    # edge order at n=4: (12),(13),(14),(23),(24),(34)
    assert cycle_vector(HamiltonianCycle((1, 2, 3, 4))).mult == (1, 0, 1, 1, 0, 1)
    assert cycle_vector(HamiltonianCycle((1, 3, 2, 4))).mult == (0, 1, 1, 1, 1, 0)


def test_cycle_normalization():
    a = HamiltonianCycle((1, 2, 3, 4))
    assert HamiltonianCycle((2, 3, 4, 1)) == a
    assert HamiltonianCycle((1, 4, 3, 2)) == a
    assert HamiltonianCycle((4, 3, 2, 1)) == a
    with pytest.raises(ValueError):
        HamiltonianCycle((1, 2, 2, 4))
    with pytest.raises(ValueError):
        HamiltonianCycle((1, 2))


def test_shortcut_vector_examples():
    s3 = EdgeSpace(3)
    assert shortcut_vector(ShortcutTriple(1, 2, 3), s3).coords == (F(1), F(-1), F(1))
    assert ShortcutTriple(3, 2, 1) == ShortcutTriple(1, 2, 3)
    s4 = EdgeSpace(4)
    v = shortcut_vector(ShortcutTriple(1, 4, 2), s4)
    assert v.get(1, 4) == 1 and v.get(2, 4) == 1 and v.get(1, 2) == -1
    assert sum(v.coords) == 1
    with pytest.raises(ValueError):
        ShortcutTriple(1, 1, 2)


@pytest.mark.parametrize("n,count", [(3, 1), (4, 3), (5, 12), (6, 60), (7, 360), (8, 2520)])
def test_hamiltonian_cycle_counts(n, count):
    cycles = enumerate_hamiltonian_cycles(n)
    assert len(cycles) == count == math.factorial(n - 1) // 2
    assert len(set(cycles)) == count
    for c in cycles:
        assert c.order[0] == 1 and c.order[1] < c.order[-1]


def test_hamiltonian_cycle_scope():
    with pytest.raises(ValueError):
        enumerate_hamiltonian_cycles(9)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_shortcut_triple_counts(n):
    triples = enumerate_shortcut_triples(n)
    assert len(triples) == n * (n - 1) * (n - 2) // 2
    assert len(set(triples)) == len(triples)
    space = EdgeSpace(n)
    for t in triples:
        coords = shortcut_vector(t, space).coords
        assert sum(coords) == 1
        assert sorted(coords, reverse=True)[:2] == [1, 1]
        assert min(coords) == -1


def _is_eulerian_connected_nx(mult, n):
    """Independent oracle built on networkx."""
    g = nx.MultiGraph()
    g.add_nodes_from(range(1, n + 1))
    for (u, v), k in zip(edge_pairs(n), mult):
        for _ in range(k):
            g.add_edge(u, v)
    return nx.is_connected(g) and all(d % 2 == 0 for _, d in g.degree())


def test_enumerate_eulerian_examples():
    only = list(enumerate_eulerian_connected(3, 1, 3))
    assert [g.mult for g in only] == [(1, 1, 1)]

    got = {g.mult for g in enumerate_eulerian_connected(4, 1, 6)}
    oracle = {
        mult
        for mult in itertools.product((0, 1), repeat=6)
        if _is_eulerian_connected_nx(mult, 4)
    }
    assert got == oracle
    tours = {tuple(cycle_vector(c).mult) for c in enumerate_hamiltonian_cycles(4)}
    assert tours <= got
    assert len(got) == 3  # K_4 has odd degrees, so only the three tours

    got2 = {g.mult for g in enumerate_eulerian_connected(4, 2, 8)}
    oracle2 = {
        mult
        for mult in itertools.product((0, 1, 2), repeat=6)
        if sum(mult) <= 8 and _is_eulerian_connected_nx(mult, 4)
    }
    assert got2 == oracle2
    assert (1, 1, 0, 1, 0, 2) in got2  # triangle 1-2-3 plus doubled {1,4}


def test_enumerate_eulerian_properties():
    seen = []
    for g in enumerate_eulerian_connected(5, 2, 8):
        degs = [degree(g, v) for v in range(1, 6)]
        assert sum(degs) == 2 * g.m
        assert all(d % 2 == 0 for d in degs)
        seen.append(g.mult)
    assert len(seen) == len(set(seen))  # duplicate-free
    assert seen == sorted(seen)  # lexicographic emission order


def test_enumerate_eulerian_scope():
    with pytest.raises(ValueError):
        list(enumerate_eulerian_connected(7, 1, 7))
    with pytest.raises(ValueError):
        list(enumerate_eulerian_connected(4, 4, 8))


def test_connectivity_cross_check():
    # Same predicate three ways: BFS components, union-find, networkx.
    for g in enumerate_eulerian_connected(4, 2, 6):
        assert is_connected_spanning(g) == _connected_union_find(g)
    for seed in range(40):
        g = sample_eulerian_connected(5, 12, seed)
        assert is_connected_spanning(g)
        assert _connected_union_find(g)
        assert _is_eulerian_connected_nx(g.mult, 5)
    sparse = Multigraph.from_edges([(1, 2), (5, 6)], 6)
    assert is_connected_spanning(sparse) == _connected_union_find(sparse) == False


def test_sampler_contract():
    g = sample_eulerian_connected(5, 5, 123)
    assert g.m == 5
    assert all(degree(g, v) == 2 for v in range(1, 6))

    g2 = sample_eulerian_connected(4, 10, 7)
    assert is_eulerian_connected(g2)
    assert 4 <= g2.m <= 10

    assert sample_eulerian_connected(6, 15, 9) == sample_eulerian_connected(6, 15, 9)
    with pytest.raises(ValueError):
        sample_eulerian_connected(5, 4, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.integers(0, 10_000))
def test_sampler_always_valid(n, seed):
    g = sample_eulerian_connected(n, 2 * n + 4, seed)
    assert is_eulerian_connected(g)
    assert n <= g.m <= 2 * n + 4
