"""Isomorphism testing: WL invariants, the DH decision procedure, brute force."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import DEFAULT_NODES, SearchLimitError, find_inducing_bijection, identity_isomorphism
from .config import canonical_invariant, invariant_components, wl_of_graph
from .dh import is_distance_hereditary
from .graphs import Graph

ISOMORPHIC = "isomorphic"
NON_ISOMORPHIC = "non_isomorphic"
UNKNOWN = "unknown"


class TheoremContractError(RuntimeError):
    """A distance-hereditary input had equal invariants but no inducing bijection."""


@dataclass
class IsoVerdict:
    kind: str
    witness: tuple[int, ...] | None = None
    certificate: str | None = None
    dh: tuple[bool, bool] = (False, False)
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "schema": "wldh.verdict/1",
            "verdict": self.kind,
            "witness": list(self.witness) if self.witness is not None else None,
            "certificate": self.certificate,
            "distance_hereditary": list(self.dh),
            "detail": self.detail,
        }


def wl_invariant(g: Graph) -> bytes:
    return canonical_invariant(wl_of_graph(g))


def one_dim_invariant(g: Graph) -> bytes:
    """Colour refinement from the uniform colouring, serialised round by round.

    Every round records its sorted table of ``(old colour, sorted neighbour
    colours)`` keys with multiplicities, so equal outputs mean the refinement
    cannot tell the graphs apart.
    """
    color = [0] * g.n
    k = 1 if g.n else 0
    history = []
    while True:
        keys = [(color[v], tuple(sorted(color[w] for w in g.adj[v]))) for v in range(g.n)]
        table = sorted(set(keys))
        rank = {key: i for i, key in enumerate(table)}
        counts = {}
        for key in keys:
            counts[key] = counts.get(key, 0) + 1
        history.append([[key[0], list(key[1]), counts[key]] for key in table])
        new = [rank[key] for key in keys]
        if len(table) == k:
            break
        color, k = new, len(table)
    return json.dumps({"n": g.n, "rounds": history}, separators=(",", ":")).encode()


def brute_force_isomorphic(g: Graph, h: Graph, max_n: int = 10) -> tuple[bool, tuple[int, ...] | None]:
    """Backtracking over degree-compatible vertex maps."""
    if max(g.n, h.n) > max_n:
        raise SearchLimitError(f"brute force limited to {max_n} vertices")
    if g.n != h.n or g.m != h.m:
        return False, None
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return False, None
    n = g.n
    f = [-1] * n
    used = [False] * n

    def rec(v):
        if v == n:
            return True
        for w in range(n):
            if used[w] or h.degree(w) != g.degree(v):
                continue
            if all(h.has_edge(f[u], w) == g.has_edge(u, v) for u in range(v)):
                f[v] = w
                used[w] = True
                if rec(v + 1):
                    return True
                used[w] = False
        f[v] = -1
        return False

    if rec(0):
        return True, tuple(f)
    return False, None


def is_isomorphism(g: Graph, h: Graph, f) -> bool:
    if g.n != h.n or sorted(f) != list(range(h.n)):
        return False
    return g.relabel(f) == h


def _first_difference(ca: list, cb: list) -> str:
    for (name, va), (_, vb) in zip(ca, cb):
        if va != vb:
            return name
    return "length"


def test_isomorphism(g: Graph, h: Graph, budget: int = DEFAULT_NODES) -> IsoVerdict:
    """Decide isomorphism via the 2-dimensional WL closure.

    Unequal invariants prove non-isomorphism for any graphs. Equal invariants
    with a distance-hereditary side guarantee an inducing bijection.
    """
    dh = (is_distance_hereditary(g)[0], is_distance_hereditary(h)[0])
    xa, xb = wl_of_graph(g), wl_of_graph(h)
    ca, cb = invariant_components(xa), invariant_components(xb)
    if ca != cb:
        return IsoVerdict(NON_ISOMORPHIC, certificate=_first_difference(ca, cb), dh=dh)
    try:
        f = find_inducing_bijection(xa, xb, identity_isomorphism(xa), max_points=None, max_nodes=budget)
    except SearchLimitError:
        f = None
        exhausted = True
    else:
        exhausted = False
    if f is not None:
        if not is_isomorphism(g, h, f):
            raise TheoremContractError("inducing bijection is not a graph isomorphism")
        return IsoVerdict(ISOMORPHIC, witness=f, dh=dh)
    if any(dh):
        raise TheoremContractError(
            "WL invariants agree on a distance-hereditary input but no inducing bijection was found"
        )
    detail = "witness search hit its budget" if exhausted else "no inducing bijection for the canonical colour map"
    return IsoVerdict(UNKNOWN, dh=dh, detail=detail)


test_isomorphism.__test__ = False  # keep pytest from collecting it
