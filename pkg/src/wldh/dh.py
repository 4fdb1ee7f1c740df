"""Distance-hereditary graphs: pruning recognition, brute-force oracle, generator."""
from __future__ import annotations

import random
from collections.abc import Sequence
from itertools import combinations

from .graphs import Graph, _bfs, attach_pendant, complete, split_vertex

EXTENSIONS = ("pendant", "true_twin", "false_twin")


def is_distance_hereditary(g: Graph) -> tuple[bool, list[tuple[str, int]]]:
    """Prune pendant vertices and twins until at most one vertex is left.

    Returns the verdict and the deletion order as ``(reason, vertex)`` pairs
    in original vertex numbering. The lowest pendant vertex goes first; with no
    pendant, the larger vertex of the lexicographically least twin pair.
    """
    alive = set(range(g.n))
    nbrs = {v: set(g.adj[v]) for v in range(g.n)}
    order: list[tuple[str, int]] = []

    def delete(v, why):
        alive.discard(v)
        for w in nbrs.pop(v):
            nbrs[w].discard(v)
        order.append((why, v))

    while len(alive) > 1:
        pend = [v for v in sorted(alive) if len(nbrs[v]) == 1]
        if pend:
            delete(pend[0], "pendant")
            continue
        found = None
        verts = sorted(alive)
        for i, a in enumerate(verts):
            na = nbrs[a]
            for b in verts[i + 1 :]:
                if na - {b} == nbrs[b] - {a}:
                    found = b
                    break
            if found is not None:
                break
        if found is None:
            return False, order
        delete(found, "twin")
    return True, order


def is_distance_hereditary_oracle(g: Graph, max_n: int = 10) -> bool:
    """Check every connected induced subgraph keeps the host distances."""
    if g.n > max_n:
        raise ValueError(f"oracle limited to {max_n} vertices, got {g.n}")
    host = [_bfs(g, v) for v in range(g.n)]
    for size in range(2, g.n + 1):
        for subset in combinations(range(g.n), size):
            keep = set(subset)
            for s in subset:
                dist = _bfs_within(g, s, keep)
                if len(dist) != size:
                    break  # disconnected subset
                for t, d in dist.items():
                    if host[s][t] != d:
                        return False
    return True


def _bfs_within(g: Graph, src: int, keep: set[int]) -> dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w in keep and w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def generate_dh(
    n: int, seed: int, weights: Sequence[float] = (1.0, 1.0, 1.0)
) -> tuple[Graph, list[tuple[str, int]]]:
    """Random connected distance-hereditary graph on ``n`` vertices.

    Grows ``K_1`` by one-vertex extensions chosen with the given weights over
    (pendant, true twin, false twin) and a uniform anchor. A false-twin split of
    an isolated anchor would disconnect the graph and is resampled.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    w = [float(x) for x in weights]
    if len(w) != 3 or any(x < 0 for x in w) or sum(w) <= 0:
        raise ValueError("weights must be three nonnegative numbers with positive sum")
    if n > 1 and w[0] == 0 and w[1] == 0:
        raise ValueError("false-twin splits alone cannot grow a connected graph from K_1")
    rng = random.Random(seed)
    g = complete(1)
    log: list[tuple[str, int]] = []
    while g.n < n:
        op = rng.choices(EXTENSIONS, weights=w)[0]
        anchor = rng.randrange(g.n)
        if op == "false_twin" and g.degree(anchor) == 0:
            continue
        if op == "pendant":
            g = attach_pendant(g, anchor)
        elif op == "true_twin":
            g = split_vertex(g, anchor, "with_edge")
        else:
            g = split_vertex(g, anchor, "without_edge")
        log.append((op, anchor))
    return g, log
