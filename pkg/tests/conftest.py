import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from wldh.dh import generate_dh
from wldh.graphs import Graph

settings.register_profile(
    "wldh", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("wldh")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, b in zip(pairs, bits) if b])


@st.composite
def dh_graphs(draw, min_n=1, max_n=14):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**31))
    return generate_dh(n, seed)[0]


@st.composite
def permutations(draw, n):
    return tuple(draw(st.permutations(list(range(n)))))


def shuffled(g: Graph, seed: int) -> tuple[Graph, list[int]]:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm), perm


@pytest.fixture
def rng():
    return random.Random(1234)
