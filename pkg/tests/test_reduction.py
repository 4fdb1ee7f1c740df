import json

import pytest
from hypothesis import given, settings

from conftest import dh_graphs
from wldh.config import Order, compare, restriction, wl_of_graph
from wldh.dh import generate_dh
from wldh.graphs import Graph, Partition, complete, complete_bipartite, cycle, path, petersen
from wldh.reduction import (
    REDUCE_TWINS,
    REMOVE_PENDANT,
    REMOVE_TWIN,
    NotDistanceHereditaryError,
    apply_reduce_twins,
    apply_remove_matching,
    apply_step,
    find_step,
    reduce,
    verify_step,
)
from wldh.twins import MatchingKind, classify_matching, find_matchings

PAW = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def _fibers(g):
    return wl_of_graph(g).fiber_partition()


def test_find_step_examples():
    k33 = complete_bipartite(3, 3)
    step = find_step(k33, Partition.trivial(6))
    assert step.kind == REDUCE_TWINS
    assert sorted(map(len, step.parabolic.classes)) == [3, 3]
    p4 = path(4)
    step = find_step(p4, _fibers(p4))
    assert step.kind == REMOVE_PENDANT and step.matching.domain == (0, 3)
    assert find_step(cycle(5), _fibers(cycle(5))) is None
    assert find_step(complete(1), Partition.trivial(1)) is None


def test_remove_matching_examples():
    pi = _fibers(PAW)
    x = wl_of_graph(PAW, pi)
    (m,) = [m for m in find_matchings(x) if m.domain == (3,)]
    g2, pi2, remap = apply_remove_matching(PAW, pi, m)
    assert g2 == complete(3) and remap == {0: 0, 1: 1, 2: 2}
    g2, pi2, _ = apply_remove_matching(path(4), _fibers(path(4)), find_step(path(4), _fibers(path(4))).matching)
    assert g2 == path(2)
    k2 = complete(2)
    d = Partition.discrete(2)
    x = wl_of_graph(k2, d)
    m = find_matchings(x)[0]
    # each vertex of K_2 is both a pendant and a twin of the other; pendant wins
    assert classify_matching(x, k2, m) is MatchingKind.PENDANT
    assert apply_remove_matching(k2, d, m)[0] == complete(1)


def test_plain_matching_rejected():
    c4 = cycle(4)
    x = wl_of_graph(c4)
    (m,) = [m for m in find_matchings(x) if m(0) == 2]
    with pytest.raises(ValueError):
        apply_remove_matching(c4, Partition.trivial(4), m)


def test_reduce_twins_examples():
    for n in (2, 5):
        g = complete(n)
        step = find_step(g, Partition.trivial(n))
        assert apply_reduce_twins(g, Partition.trivial(n), step.parabolic)[0] == complete(1)
    k33 = complete_bipartite(3, 3)
    step = find_step(k33, Partition.trivial(6))
    assert apply_reduce_twins(k33, Partition.trivial(6), step.parabolic)[0] == complete(2)
    c4 = cycle(4)
    step = find_step(c4, _fibers(c4))
    g2, pi2 = apply_step(c4, _fibers(c4), step)
    assert g2 == complete(2) and pi2 == Partition.trivial(2)


def test_verify_examples():
    pi = _fibers(PAW)
    assert verify_step(PAW, pi, find_step(PAW, pi)).clean
    x = wl_of_graph(PAW, pi)
    (m,) = [m for m in find_matchings(x) if m.domain == (3,)]
    g2, pi2, _ = apply_remove_matching(PAW, pi, m)
    assert g2 == complete(3)
    assert compare(restriction(x, [0, 1, 2]), wl_of_graph(g2, pi2)) is Order.EQUAL
    assert verify_step(complete(1), Partition.trivial(1), None).clean


def test_reduce_examples():
    assert len(reduce(complete(1))) == 0
    t = reduce(complete_bipartite(3, 3))
    assert [e.step.kind for e in t.entries] == [REDUCE_TWINS, REDUCE_TWINS]
    assert [(e.before, e.after) for e in t.entries] == [(6, 2), (2, 1)]
    assert t.clean and t.terminal == complete(1)
    for seed in range(3):
        g, _ = generate_dh(30, seed)
        t = reduce(g)
        assert t.clean and t.terminal.n == 1


def test_reduce_rejects():
    with pytest.raises(NotDistanceHereditaryError):
        reduce(petersen())
    with pytest.raises(NotDistanceHereditaryError):
        reduce(Graph(3, [(0, 1)]))


@settings(max_examples=40)
@given(dh_graphs(max_n=25))
def test_reduce_property(g):
    t = reduce(g)
    assert t.clean
    assert t.terminal.n == 1
    sizes = [e.before for e in t.entries] + [1]
    assert all(a > b for a, b in zip(sizes, sizes[1:]))
    for e in t.entries:
        # each recorded partition is correct for its graph
        assert wl_of_graph(e.graph, e.partition).fiber_partition() == e.partition


def test_trace_json():
    t = reduce(path(5))
    d = json.loads(json.dumps(t.as_dict()))
    assert d["schema"] == "wldh.trace/1" and d["clean"] and d["terminal_vertices"] == 1
    assert {s["kind"] for s in d["steps"]} <= {REDUCE_TWINS, REMOVE_PENDANT, REMOVE_TWIN}
