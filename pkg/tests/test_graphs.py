import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from wldh.graphs import (
    EquivalenceRelation,
    Graph,
    Partition,
    are_twins,
    attach_pendant,
    cocktail_party,
    complement,
    complete,
    complete_bipartite,
    cycle,
    distance_matrix,
    empty,
    induced_subgraph,
    pendant_vertices,
    path,
    petersen,
    prism,
    quotient_graph,
    rook_graph,
    shrikhande,
    split_vertex,
    star,
    twin_equivalence,
)


def _iso(g, h):
    return nx.is_isomorphic(nx.Graph(list(g.edges)), nx.Graph(list(h.edges))) and g.n == h.n


def test_distance_examples():
    d = distance_matrix(complete(3))
    assert all(d[i, j] == 1 for i in range(3) for j in range(3) if i != j)
    assert distance_matrix(path(4))[0, 3] == 3
    d5 = distance_matrix(cycle(5))
    for v in range(5):
        assert sorted(d5[v]) == [0, 1, 1, 2, 2]


@given(graphs())
def test_distance_matches_networkx(g):
    d = distance_matrix(g)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    ref = dict(nx.all_pairs_shortest_path_length(h))
    for u in range(g.n):
        for v in range(g.n):
            if v in ref[u]:
                assert d[u, v] == ref[u][v]
            else:
                assert d[u, v] > g.n


def test_twin_equivalence_examples():
    assert len(twin_equivalence(complete(5)).classes) == 1
    assert twin_equivalence(cycle(5)).is_trivial()
    assert twin_equivalence(complete_bipartite(3, 3)).classes.as_set() == {
        frozenset({0, 1, 2}),
        frozenset({3, 4, 5}),
    }


@given(graphs(min_n=2))
def test_twin_equivalence_is_pairwise_twins(g):
    e = twin_equivalence(g)
    for a in range(g.n):
        for b in range(a + 1, g.n):
            assert e.related(a, b) == are_twins(g, a, b)


def test_pendants():
    assert pendant_vertices(path(3)) == {0, 2}
    assert pendant_vertices(complete(3)) == frozenset()
    assert pendant_vertices(star(4)) == {1, 2, 3, 4}


def test_extensions():
    assert attach_pendant(complete(1), 0) == path(2)
    assert attach_pendant(path(2), 1) == path(3)
    assert _iso(attach_pendant(path(3), 1), star(3))
    assert split_vertex(complete(1), 0, "with_edge") == complete(2)
    assert split_vertex(complete(1), 0, "without_edge") == empty(2)
    p = split_vertex(complete(2), 1, "without_edge")
    assert nx.is_isomorphic(nx.Graph(p.edges), nx.path_graph(3))
    assert are_twins(p, 1, 2)
    with pytest.raises(ValueError):
        split_vertex(complete(2), 0, "sideways")


@given(graphs(), st.data())
def test_split_makes_twins(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    for kind in ("with_edge", "without_edge"):
        h = split_vertex(g, v, kind)
        assert h.n == g.n + 1 and are_twins(h, v, g.n)
        assert h.has_edge(v, g.n) == (kind == "with_edge")


def test_quotient_examples():
    k4 = complete(4)
    assert quotient_graph(k4, twin_equivalence(k4)) == complete(1)
    k33 = complete_bipartite(3, 3)
    assert quotient_graph(k33, twin_equivalence(k33)) == complete(2)
    c5 = cycle(5)
    assert quotient_graph(c5, EquivalenceRelation.identity(5)) == c5
    with pytest.raises(ValueError):
        quotient_graph(path(3), EquivalenceRelation(3, [(0, 1)]))


def test_induced_subgraph_examples():
    assert induced_subgraph(complete(4), [0, 1, 2])[0] == complete(3)
    assert induced_subgraph(cycle(5), [0, 1, 2, 3])[0] == path(4)
    h, remap = induced_subgraph(cycle(5), range(5))
    assert h == cycle(5) and remap == {i: i for i in range(5)}


def test_families():
    assert cocktail_party(2) == Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert nx.is_isomorphic(nx.Graph(cocktail_party(2).edges), nx.cycle_graph(4))
    assert complement(complete(5)) == empty(5)
    assert complete_bipartite(1, 3) == star(3)
    assert all(petersen().degree(v) == 3 for v in range(10))
    assert nx.is_isomorphic(nx.Graph(petersen().edges), nx.petersen_graph())
    assert nx.is_isomorphic(nx.Graph(prism().edges), nx.circular_ladder_graph(3))
    for g in (shrikhande(), rook_graph()):
        assert g.n == 16 and all(g.degree(v) == 6 for v in range(16))
        a = g.matrix.astype(int)
        a2 = a @ a
        # srg(16, 6, 2, 2): lambda = mu = 2
        assert all(a2[i, j] == 2 for i in range(16) for j in range(16) if i != j)


@given(graphs(), st.data())
def test_relabel_roundtrip(g, data):
    perm = data.draw(st.permutations(list(range(g.n))))
    inv = [0] * g.n
    for i, p in enumerate(perm):
        inv[p] = i
    assert g.relabel(perm).relabel(inv) == g
    assert g.relabel(perm).m == g.m


def test_partition_and_equivalence():
    p = Partition([[2, 0], [1]], 3)
    assert p == Partition([[1], [0, 2]])
    assert p.class_of[2] == p.class_of[0] != p.class_of[1]
    with pytest.raises(ValueError):
        Partition([[0, 1], [1, 2]], 3)
    e = EquivalenceRelation(4, [(0, 3), (3, 2)])
    assert e.related(0, 2) and not e.related(0, 1)
    assert e.class_index[2] == e.class_index[0]
    m = e.matrix()
    assert np.array_equal(m, m.T) and m.diagonal().all()


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 5)])
