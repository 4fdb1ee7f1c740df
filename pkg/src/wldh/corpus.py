"""Exhaustive small-graph corpora, deduplicated with the brute-force oracle."""
from __future__ import annotations

from collections.abc import Iterator
from itertools import combinations

from .dh import is_distance_hereditary
from .graphs import Graph
from .iso import brute_force_isomorphic


def _cheap_key(g: Graph) -> tuple:
    deg = [len(a) for a in g.adj]
    local = sorted((deg[v], tuple(sorted(deg[w] for w in g.adj[v]))) for v in range(g.n))
    tri = sum(1 for u, v in g.edges for w in g.adj[u] & g.adj[v] if w > v)
    return g.n, g.m, tuple(local), tri


def _dedupe(graphs: Iterator[Graph]) -> list[Graph]:
    buckets: dict[tuple, list[Graph]] = {}
    out = []
    for g in graphs:
        bucket = buckets.setdefault(_cheap_key(g), [])
        if any(brute_force_isomorphic(g, h)[0] for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


def connected_graphs(max_n: int) -> dict[int, list[Graph]]:
    """All connected graphs up to isomorphism, keyed by order.

    Every connected graph on ``n`` vertices arises by joining a new vertex to
    a nonempty subset of a connected graph on ``n - 1`` vertices (delete a
    non-cut vertex to see this).
    """
    out = {1: [Graph(1)]}
    for n in range(2, max_n + 1):
        def grow():
            for g in out[n - 1]:
                for size in range(1, n):
                    for nbrs in combinations(range(n - 1), size):
                        yield Graph(n, [*g.edges, *((u, n - 1) for u in nbrs)])

        out[n] = _dedupe(grow())
    return out


def connected_dh_graphs(max_n: int) -> dict[int, list[Graph]]:
    return {
        n: [g for g in gs if is_distance_hereditary(g)[0]] for n, gs in connected_graphs(max_n).items()
    }


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
