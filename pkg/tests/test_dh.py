import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dh_graphs, graphs
from wldh.corpus import all_labeled_graphs, connected_dh_graphs, connected_graphs
from wldh.dh import generate_dh, is_distance_hereditary, is_distance_hereditary_oracle
from wldh.graphs import complete, complete_bipartite, cycle, path, petersen
from wldh.io import to_graph6


def test_recognition_examples():
    assert not is_distance_hereditary(cycle(5))[0]
    assert is_distance_hereditary(complete_bipartite(3, 3))[0]
    assert is_distance_hereditary(cycle(4))[0]
    assert not is_distance_hereditary(petersen())[0]


def test_oracle_examples():
    assert is_distance_hereditary_oracle(cycle(4))
    assert not is_distance_hereditary_oracle(cycle(5))
    assert not is_distance_hereditary_oracle(petersen())
    with pytest.raises(ValueError):
        is_distance_hereditary_oracle(path(12))


def test_pruning_order_is_canonical():
    ok, order = is_distance_hereditary(path(4))
    assert ok and order == [("pendant", 0), ("pendant", 1), ("pendant", 2)]
    ok, order = is_distance_hereditary(complete(3))
    assert order == [("twin", 1), ("pendant", 0)]


@given(graphs(max_n=8))
def test_recognition_matches_oracle(g):
    assert is_distance_hereditary(g)[0] == is_distance_hereditary_oracle(g)


def test_recognition_matches_oracle_exhaustive_n6():
    for g in all_labeled_graphs(6):
        assert is_distance_hereditary(g)[0] == is_distance_hereditary_oracle(g), to_graph6(g)


def test_generator_examples():
    assert generate_dh(1, 0)[0] == complete(1)
    assert {generate_dh(2, s)[0] for s in range(20)} == {complete(2)}
    assert is_distance_hereditary(generate_dh(6, 42)[0])[0]


@given(st.integers(1, 40), st.integers(0, 2**32))
def test_generator_output_is_connected_dh(n, seed):
    g, log = generate_dh(n, seed)
    assert g.n == n and g.is_connected()
    assert is_distance_hereditary(g)[0]
    assert len(log) == n - 1


@given(st.integers(1, 30), st.integers(0, 2**32))
def test_generator_deterministic(n, seed):
    assert generate_dh(n, seed) == generate_dh(n, seed)


def test_generator_weights():
    g, log = generate_dh(10, 3, (1, 0, 0))
    assert {op for op, _ in log} == {"pendant"} and g.m == 9
    g, log = generate_dh(6, 3, (0, 1, 0))
    assert g == complete(6)
    with pytest.raises(ValueError):
        generate_dh(5, 0, (0, 0, 1))
    with pytest.raises(ValueError):
        generate_dh(5, 0, (1, -1, 0))
    with pytest.raises(ValueError):
        generate_dh(0, 0)


@given(dh_graphs(max_n=10))
def test_generated_pass_oracle(g):
    assert is_distance_hereditary_oracle(g)


def test_corpus_counts():
    # connected graphs and connected distance-hereditary graphs up to isomorphism
    assert {n: len(v) for n, v in connected_graphs(6).items()} == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}
    assert {n: len(v) for n, v in connected_dh_graphs(6).items()} == {1: 1, 2: 1, 3: 2, 4: 6, 5: 18, 6: 73}
