"""Algebraic isomorphisms between coherent configurations at desk scale.

Everything here is exhaustive backtracking with explicit node budgets; it is
meant for configurations with a few dozen colours and points.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .config import Rainbow, wl_of_graph
from .graphs import Graph, Partition
from .twins import twin_parabolic_colors

DEFAULT_NODES = 10**6


class SearchLimitError(RuntimeError):
    """Instance exceeds the configured size bound."""


@dataclass(frozen=True)
class AlgebraicIsomorphism:
    phi: tuple[int, ...]
    fiber_map: tuple[int, ...]

    def __call__(self, color: int) -> int:
        return self.phi[color]

    def compose(self, other: AlgebraicIsomorphism) -> AlgebraicIsomorphism:
        """``other`` after ``self``."""
        return AlgebraicIsomorphism(
            tuple(other.phi[c] for c in self.phi),
            tuple(other.fiber_map[f] for f in self.fiber_map),
        )

    def inverse(self) -> AlgebraicIsomorphism:
        inv = [0] * len(self.phi)
        for a, b in enumerate(self.phi):
            inv[b] = a
        finv = [0] * len(self.fiber_map)
        for a, b in enumerate(self.fiber_map):
            finv[b] = a
        return AlgebraicIsomorphism(tuple(inv), tuple(finv))


@dataclass
class AisoResult:
    isomorphisms: list[AlgebraicIsomorphism]
    complete: bool
    nodes: int

    def __len__(self):
        return len(self.isomorphisms)

    def __iter__(self):
        return iter(self.isomorphisms)


def _fingerprints(x: Rainbow, marked: frozenset[int] | None) -> list[tuple]:
    """Per-colour data preserved by every algebraic isomorphism."""
    as_r: dict[int, Counter] = {s: Counter() for s in range(x.k)}
    as_s: dict[int, Counter] = {s: Counter() for s in range(x.k)}
    as_t: dict[int, Counter] = {s: Counter() for s in range(x.k)}
    for r, s, t, c in x.tensor:
        as_r[r][c] += 1
        as_s[s][c] += 1
        as_t[t][c] += 1
    val = x.valencies
    out = []
    for s in range(x.k):
        out.append(
            (
                bool(x.reflexive[s]),
                int(x.sizes[s]),
                int(val[s]),
                int(val[x.transpose[s]]),
                bool(x.transpose[s] == s),
                None if marked is None else s in marked,
                tuple(sorted(as_r[s].items())),
                tuple(sorted(as_s[s].items())),
                tuple(sorted(as_t[s].items())),
            )
        )
    return out


def _tensor_index(x: Rainbow) -> dict[int, list[tuple[int, int, int, int]]]:
    idx: dict[int, list] = {s: [] for s in range(x.k)}
    for r, s, t, c in x.tensor:
        for u in {r, s, t}:
            idx[u].append((r, s, t, c))
    return idx


def enumerate_algebraic_isomorphisms(
    a: Rainbow,
    b: Rainbow,
    limit: int = 1000,
    *,
    max_colors: int = 64,
    max_nodes: int = DEFAULT_NODES,
    edge_colors: tuple[frozenset[int], frozenset[int]] | None = None,
) -> AisoResult:
    """All colour bijections preserving every intersection number.

    ``edge_colors`` optionally pins a colour set of ``a`` (e.g. the arcs of a
    graph) to a colour set of ``b``.
    """
    if max(a.k, b.k) > max_colors:
        raise SearchLimitError(f"colour count {max(a.k, b.k)} exceeds bound {max_colors}")
    empty = AisoResult([], True, 0)
    if a.k != b.k or a.n != b.n or len(a.fibers) != len(b.fibers):
        return empty
    ma, mb = (None, None) if edge_colors is None else edge_colors
    fa, fb = _fingerprints(a, ma), _fingerprints(b, mb)
    if sorted(fa) != sorted(fb):
        return empty
    cand = {u: [v for v in range(b.k) if fb[v] == fa[u]] for u in range(a.k)}
    order = sorted(range(a.k), key=lambda u: (not a.reflexive[u], len(cand[u]), u))
    tb = b.tensor
    ta = a.tensor
    idx_a = _tensor_index(a)
    idx_b = _tensor_index(b)
    phi = [-1] * a.k
    inv = [-1] * b.k
    found: list[AlgebraicIsomorphism] = []
    nodes = 0
    complete = True

    def consistent(us):
        for u in us:
            for r, s, t, c in idx_a[u]:
                if phi[r] >= 0 and phi[s] >= 0 and phi[t] >= 0 and tb[(phi[r], phi[s], phi[t])] != c:
                    return False
            for r, s, t, c in idx_b[phi[u]]:
                if inv[r] >= 0 and inv[s] >= 0 and inv[t] >= 0 and ta[(inv[r], inv[s], inv[t])] != c:
                    return False
        return True

    def assign(u, v):
        phi[u], inv[v] = v, u

    def unassign(u, v):
        phi[u], inv[v] = -1, -1

    def rec(pos):
        nonlocal nodes, complete
        while pos < len(order) and phi[order[pos]] >= 0:
            pos += 1
        if pos == len(order):
            found.append(_finish(a, b, phi))
            return len(found) >= limit
        u = order[pos]
        ut = int(a.transpose[u])
        for v in cand[u]:
            if inv[v] >= 0:
                continue
            vt = int(b.transpose[v])
            if (ut == u) != (vt == v):
                continue
            if ut != u and (inv[vt] >= 0 or phi[ut] >= 0 or fb[vt] != fa[ut]):
                continue
            nodes += 1
            if nodes > max_nodes:
                complete = False
                return True
            assign(u, v)
            if ut != u:
                assign(ut, vt)
            if consistent((u, ut)) and rec(pos + 1):
                return True
            if ut != u:
                unassign(ut, vt)
            unassign(u, v)
        return False

    stopped = rec(0)
    if stopped and len(found) >= limit:
        complete = False
    for iso in found:
        if not preserves_tensor(a, b, iso):
            raise AssertionError("enumerated map does not preserve the intersection numbers")
    return AisoResult(found, complete, nodes)


def _finish(a: Rainbow, b: Rainbow, phi: Sequence[int]) -> AlgebraicIsomorphism:
    fmap = []
    for f, col in enumerate(a.fiber_colors):
        fmap.append(b.fiber_colors.index(phi[col]))
    return AlgebraicIsomorphism(tuple(phi), tuple(fmap))


def preserves_tensor(a: Rainbow, b: Rainbow, iso: AlgebraicIsomorphism) -> bool:
    phi = iso.phi
    if sorted(phi) != list(range(b.k)) or a.k != b.k:
        return False
    mapped = {(phi[r], phi[s], phi[t]): c for r, s, t, c in a.tensor}
    return mapped == b.tensor.entries


def identity_isomorphism(x: Rainbow) -> AlgebraicIsomorphism:
    return AlgebraicIsomorphism(tuple(range(x.k)), tuple(range(len(x.fibers))))


# -- point bijections ----------------------------------------------------------


def matrix_bijections(
    ma: np.ndarray,
    mb: np.ndarray,
    *,
    first_only: bool = True,
    max_nodes: int = DEFAULT_NODES,
) -> tuple[list[tuple[int, ...]], bool]:
    """Bijections ``f`` with ``mb[f(a), f(b)] == ma[a, b]`` for all pairs.

    Backtracking with forward checking on candidate sets; the point with the
    fewest candidates is branched on first. Returns ``(solutions, complete)``.
    """
    ma = np.asarray(ma)
    mb = np.asarray(mb)
    n = ma.shape[0]
    if mb.shape[0] != n:
        return [], True
    if n == 0:
        return [()], True
    row_a = [tuple(sorted(r)) for r in ma.tolist()]
    row_b = [tuple(sorted(r)) for r in mb.tolist()]
    col_a = [tuple(sorted(r)) for r in ma.T.tolist()]
    col_b = [tuple(sorted(r)) for r in mb.T.tolist()]
    dom = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            dom[i, j] = ma[i, i] == mb[j, j] and row_a[i] == row_b[j] and col_a[i] == col_b[j]
    sols: list[tuple[int, ...]] = []
    f = [-1] * n
    nodes = 0
    complete = True

    def rec(dom, assigned):
        nonlocal nodes, complete
        if assigned == n:
            sols.append(tuple(f))
            return first_only
        free = [i for i in range(n) if f[i] < 0]
        sizes = dom[free].sum(axis=1)
        if (sizes == 0).any():
            return False
        i = free[int(np.argmin(sizes))]
        for j in np.nonzero(dom[i])[0].tolist():
            nodes += 1
            if nodes > max_nodes:
                complete = False
                return True
            f[i] = j
            nd = dom.copy()
            nd[:, j] = False
            # unassigned x must map to y with mb[j, y] == ma[i, x] and mb[y, j] == ma[x, i]
            nd &= (mb[j][None, :] == ma[i][:, None]) & (mb[:, j][None, :] == ma[:, i][:, None])
            nd[i] = False
            nd[i, j] = True
            for k in range(n):
                if f[k] >= 0 and k != i:
                    nd[k] = False
                    nd[k, f[k]] = True
            if rec(nd, assigned + 1):
                return True
            f[i] = -1
        return False

    rec(dom, 0)
    for sol in sols:
        perm = np.asarray(sol)
        if not np.array_equal(mb[np.ix_(perm, perm)], ma):
            raise AssertionError("backtracking produced an invalid bijection")
    return sols, complete


def find_inducing_bijection(
    a: Rainbow,
    b: Rainbow,
    iso: AlgebraicIsomorphism,
    *,
    max_points: int | None = 64,
    max_nodes: int = DEFAULT_NODES,
) -> tuple[int, ...] | None:
    """Point bijection ``f`` with ``r(f(x), f(y)) == phi(r(x, y))``, or ``None``.

    Raises :class:`SearchLimitError` when the point bound or node budget is hit.
    """
    if max_points is not None and max(a.n, b.n) > max_points:
        raise SearchLimitError(f"point count {max(a.n, b.n)} exceeds bound {max_points}")
    if a.n != b.n:
        return None
    mapped = np.asarray(iso.phi, dtype=np.int64)[a.color]
    sols, complete = matrix_bijections(mapped, b.color, max_nodes=max_nodes)
    if sols:
        return sols[0]
    if not complete:
        raise SearchLimitError("node budget exhausted before the search finished")
    return None


@dataclass
class SeparabilityReport:
    checked: int = 0
    failures: list[tuple[int, AlgebraicIsomorphism]] = field(default_factory=list)
    incomplete: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.incomplete


def check_separability_against(
    a: Rainbow,
    corpus: Sequence[Rainbow],
    *,
    limit: int = 10_000,
    max_nodes: int = DEFAULT_NODES,
) -> SeparabilityReport:
    """Try to induce every algebraic isomorphism from ``a`` into each corpus member.

    A clean report is evidence of separability, not a proof.
    """
    rep = SeparabilityReport()
    for i, b in enumerate(corpus):
        res = enumerate_algebraic_isomorphisms(a, b, limit, max_nodes=max_nodes)
        if not res.complete:
            rep.incomplete.append(i)
        for iso in res:
            rep.checked += 1
            try:
                f = find_inducing_bijection(a, b, iso, max_nodes=max_nodes)
            except SearchLimitError:
                rep.incomplete.append(i)
                continue
            if f is None:
                rep.failures.append((i, iso))
    return rep


def twin_parabolic_transport(a: Rainbow, b: Rainbow, iso: AlgebraicIsomorphism) -> bool:
    ea = twin_parabolic_colors(a)
    eb = twin_parabolic_colors(b)
    return frozenset(iso.phi[c] for c in ea) == eb


# -- automorphisms ---------------------------------------------------------------


@dataclass(frozen=True)
class AutomorphismReport:
    graph_automorphisms: frozenset[tuple[int, ...]]
    config_automorphisms: frozenset[tuple[int, ...]]

    @property
    def equal(self) -> bool:
        return self.graph_automorphisms == self.config_automorphisms

    @property
    def order(self) -> int:
        return len(self.graph_automorphisms)


def graph_automorphisms_fixing(g: Graph, pi: Partition) -> set[tuple[int, ...]]:
    """Plain backtracking over vertex images, class by class."""
    n = g.n
    f = [-1] * n
    used = [False] * n
    out: set[tuple[int, ...]] = set()

    def rec(v):
        if v == n:
            out.add(tuple(f))
            return
        for w in pi.classes[pi.class_of[v]]:
            if used[w] or g.degree(w) != g.degree(v):
                continue
            if all(g.has_edge(f[u], w) == g.has_edge(u, v) for u in range(v)):
                f[v] = w
                used[w] = True
                rec(v + 1)
                used[w] = False
                f[v] = -1

    rec(0)
    return out


def automorphisms_desk(g: Graph, pi: Partition | None = None, *, max_n: int = 10) -> AutomorphismReport:
    """Automorphisms of ``g`` fixing every class of ``pi`` against those of its closure."""
    if g.n > max_n:
        raise SearchLimitError(f"automorphism check limited to {max_n} vertices")
    if pi is None:
        pi = Partition.trivial(g.n)
    x = wl_of_graph(g, pi)
    sols, complete = matrix_bijections(x.color, x.color, first_only=False, max_nodes=10**7)
    if not complete:
        raise SearchLimitError("automorphism enumeration exceeded its budget")
    return AutomorphismReport(frozenset(graph_automorphisms_fixing(g, pi)), frozenset(sols))

