from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dh_graphs, graphs, shuffled
from wldh.algebra import (
    AlgebraicIsomorphism,
    SearchLimitError,
    automorphisms_desk,
    check_separability_against,
    enumerate_algebraic_isomorphisms,
    find_inducing_bijection,
    identity_isomorphism,
    matrix_bijections,
    preserves_tensor,
    twin_parabolic_transport,
)
from wldh.config import discrete_configuration, wl_of_graph
from wldh.corpus import connected_dh_graphs
from wldh.graphs import (
    Partition,
    complete,
    complete_bipartite,
    cycle,
    path,
    rook_graph,
    shrikhande,
)
from wldh.iso import is_isomorphism


def _brute_aiso(a, b):
    """Every colour permutation checked against the full tensor."""
    if a.k != b.k:
        return set()
    out = set()
    ta, tb = a.tensor, b.tensor
    for phi in permutations(range(b.k)):
        if all(tb[phi[r], phi[s], phi[t]] == ta[r, s, t] for r in range(a.k) for s in range(a.k) for t in range(a.k)):
            out.add(phi)
    return out


def test_enumeration_examples():
    k3 = wl_of_graph(complete(3))
    res = enumerate_algebraic_isomorphisms(k3, k3)
    assert [iso.phi for iso in res] == [(0, 1)] and res.complete
    assert len(enumerate_algebraic_isomorphisms(wl_of_graph(cycle(5)), wl_of_graph(path(5)))) == 0
    s, r = wl_of_graph(shrikhande()), wl_of_graph(rook_graph())
    assert len(enumerate_algebraic_isomorphisms(s, r)) >= 1


@settings(max_examples=40)
@given(graphs(max_n=5), graphs(max_n=5))
def test_enumeration_matches_brute_force(g, h):
    a, b = wl_of_graph(g), wl_of_graph(h)
    if max(a.k, b.k) > 7:
        return
    got = {iso.phi for iso in enumerate_algebraic_isomorphisms(a, b)}
    assert got == _brute_aiso(a, b)


@settings(max_examples=30)
@given(dh_graphs(max_n=7))
def test_self_isomorphisms_form_group(g):
    x = wl_of_graph(g)
    res = enumerate_algebraic_isomorphisms(x, x, 10**5, max_colors=500)
    assert res.complete
    phis = {iso.phi for iso in res}
    assert identity_isomorphism(x).phi in phis
    for p in res:
        assert preserves_tensor(x, x, p)
        assert p.inverse().phi in phis
        for q in res:
            assert p.compose(q).phi in phis


def test_enumeration_bound():
    big = discrete_configuration(9)
    with pytest.raises(SearchLimitError):
        enumerate_algebraic_isomorphisms(big, big)


def test_inducing_examples():
    k5 = wl_of_graph(complete(5))
    f = find_inducing_bijection(k5, k5, identity_isomorphism(k5))
    assert sorted(f) == list(range(5))
    s, r = wl_of_graph(shrikhande()), wl_of_graph(rook_graph())
    for iso in enumerate_algebraic_isomorphisms(s, r):
        assert find_inducing_bijection(s, r, iso) is None
    with pytest.raises(SearchLimitError):
        find_inducing_bijection(k5, k5, identity_isomorphism(k5), max_points=3)


@given(dh_graphs(max_n=18), st.integers(0, 10**6))
def test_relabelled_dh_witness_is_isomorphism(g, seed):
    h, _ = shuffled(g, seed)
    a, b = wl_of_graph(g), wl_of_graph(h)
    f = find_inducing_bijection(a, b, identity_isomorphism(a))
    assert f is not None and is_isomorphism(g, h, f)
    assert (b.color[np.ix_(f, f)] == a.color).all()


@given(graphs(max_n=7), graphs(max_n=7))
def test_matrix_bijections_against_permutations(g, h):
    ma, mb = g.matrix.astype(int), h.matrix.astype(int)
    sols, complete_ = matrix_bijections(ma, mb, first_only=False)
    assert complete_
    want = set()
    if g.n == h.n:
        for p in permutations(range(g.n)):
            if (mb[np.ix_(p, p)] == ma).all():
                want.add(p)
    assert set(sols) == want


def test_separability_examples():
    s, r = wl_of_graph(shrikhande()), wl_of_graph(rook_graph())
    rep = check_separability_against(s, [r])
    assert rep.failures and not rep.passed
    one = discrete_configuration(1)
    assert check_separability_against(one, [one, one]).passed


def test_separability_dh_order_5():
    corpus = [wl_of_graph(g) for g in connected_dh_graphs(5)[5]]
    for a in corpus:
        rep = check_separability_against(a, corpus)
        assert rep.passed and rep.checked >= 1


def test_twin_transport_examples():
    x = wl_of_graph(complete_bipartite(3, 3))
    assert twin_parabolic_transport(x, x, identity_isomorphism(x))
    y = wl_of_graph(shuffled(complete_bipartite(3, 3), 5)[0])
    for iso in enumerate_algebraic_isomorphisms(x, y):
        assert twin_parabolic_transport(x, y, iso)


@settings(max_examples=30)
@given(dh_graphs(max_n=9), st.integers(0, 10**6))
def test_twin_transport_property(g, seed):
    a = wl_of_graph(g)
    b = wl_of_graph(shuffled(g, seed)[0])
    for iso in enumerate_algebraic_isomorphisms(a, b):
        assert twin_parabolic_transport(a, b, iso)


def test_algebraic_isomorphism_algebra():
    p = AlgebraicIsomorphism((1, 0, 2), (0,))
    assert p.compose(p.inverse()).phi == (0, 1, 2)
    assert p(0) == 1


def test_automorphism_examples():
    assert automorphisms_desk(complete(3)).order == 6
    rep = automorphisms_desk(cycle(5))
    assert rep.equal and rep.order == 10
    rep = automorphisms_desk(path(3), Partition([[1], [0, 2]]))
    assert rep.equal and rep.order == 2
    with pytest.raises(SearchLimitError):
        automorphisms_desk(path(12))


@settings(max_examples=25)
@given(dh_graphs(max_n=8))
def test_automorphisms_agree_on_dh(g):
    pi = wl_of_graph(g).fiber_partition()
    assert automorphisms_desk(g, pi).equal
