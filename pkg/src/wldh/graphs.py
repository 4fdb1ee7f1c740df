"""Finite simple graphs, vertex partitions and equivalence relations."""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from functools import cached_property

import numpy as np

INF = np.iinfo(np.int64).max // 4


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Immutable; adjacency is stored as a tuple of frozensets.
    """

    __slots__ = ("n", "adj", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in nbrs)

    @classmethod
    def from_adjacency(cls, matrix) -> Graph:
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if (m != m.T).any():
            raise ValueError("adjacency matrix must be symmetric")
        if m.diagonal().any():
            raise ValueError("adjacency matrix has self-loops")
        us, vs = np.nonzero(np.triu(m, 1))
        return cls(m.shape[0], zip(us.tolist(), vs.tolist()))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Undirected edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @cached_property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in range(self.n) for v in self.adj[u])

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            m[u, v] = m[v, u] = True
        m.setflags(write=False)
        return m

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @property
    def m(self) -> int:
        return len(self.edges)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(_bfs(self, 0)) == self.n

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for v in range(self.n):
            if v not in seen:
                comp = sorted(_bfs(self, v))
                seen.update(comp)
                out.append(comp)
        return out

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def _bfs(g: Graph, src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


class Partition:
    """Ordered partition of ``0..n-1`` into nonempty classes.

    Class order is kept as given; equality ignores it.
    """

    def __init__(self, classes: Iterable[Iterable[int]], n: int | None = None):
        cls = tuple(tuple(sorted(int(v) for v in c)) for c in classes)
        if any(len(c) == 0 for c in cls):
            raise ValueError("partition classes must be nonempty")
        total = sum(len(c) for c in cls)
        if n is None:
            n = total
        class_of = [-1] * n
        for i, c in enumerate(cls):
            for v in c:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range for n={n}")
                if class_of[v] != -1:
                    raise ValueError(f"vertex {v} appears in two classes")
                class_of[v] = i
        if total != n:
            raise ValueError("classes do not cover the vertex set")
        self.n = n
        self.classes: tuple[tuple[int, ...], ...] = cls
        self.class_of: tuple[int, ...] = tuple(class_of)

    @classmethod
    def trivial(cls, n: int) -> Partition:
        return cls([range(n)] if n else [], n)

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls([[v] for v in range(n)], n)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Partition:
        """Classes are label groups, ordered by label value."""
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(v)
        return cls([groups[k] for k in sorted(groups)], len(labels))

    def as_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.classes)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.n == other.n and self.as_set() == other.as_set()

    def __hash__(self):
        return hash(self.as_set())

    def __repr__(self):
        return f"Partition({[list(c) for c in self.classes]})"


class EquivalenceRelation:
    """Equivalence relation on ``0..n-1`` stored as a representative map.

    The representative of a class is its smallest element; classes are
    ordered by representative.
    """

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]] = ()):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        rep = [find(v) for v in range(n)]
        # union by smaller root keeps the minimum as the root
        self.n = n
        self.representative: tuple[int, ...] = tuple(rep)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> EquivalenceRelation:
        pairs = []
        for c in classes:
            c = list(c)
            pairs.extend((c[0], v) for v in c[1:])
        return cls(n, pairs)

    @classmethod
    def identity(cls, n: int) -> EquivalenceRelation:
        return cls(n)

    @cached_property
    def classes(self) -> Partition:
        groups: dict[int, list[int]] = {}
        for v, r in enumerate(self.representative):
            groups.setdefault(r, []).append(v)
        return Partition([groups[r] for r in sorted(groups)], self.n)

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        """Vertex -> index of its class in :attr:`classes`."""
        return self.classes.class_of

    def related(self, a: int, b: int) -> bool:
        return self.representative[a] == self.representative[b]

    def is_trivial(self) -> bool:
        return all(r == v for v, r in enumerate(self.representative))

    def matrix(self) -> np.ndarray:
        rep = np.asarray(self.representative)
        return rep[:, None] == rep[None, :]

    def pairs(self) -> Iterable[tuple[int, int]]:
        for c in self.classes:
            for a in c:
                for b in c:
                    yield a, b

    def __eq__(self, other):
        return (
            isinstance(other, EquivalenceRelation)
            and self.n == other.n
            and self.representative == other.representative
        )

    def __hash__(self):
        return hash(self.representative)

    def __repr__(self):
        return f"EquivalenceRelation({[list(c) for c in self.classes]})"


# -- operations --------------------------------------------------------------


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances; unreachable pairs hold :data:`INF`."""
    d = np.full((g.n, g.n), INF, dtype=np.int64)
    for s in range(g.n):
        for v, k in _bfs(g, s).items():
            d[s, v] = k
    return d


def twin_equivalence(g: Graph) -> EquivalenceRelation:
    """Twins: vertices with equal neighbourhoods outside the pair itself.

    Covers both adjacent and non-adjacent twins.
    """
    pairs = []
    for a in range(g.n):
        na = g.adj[a]
        for b in range(a + 1, g.n):
            if na - {b} == g.adj[b] - {a}:
                pairs.append((a, b))
    return EquivalenceRelation(g.n, pairs)


def are_twins(g: Graph, a: int, b: int) -> bool:
    return a == b or g.adj[a] - {b} == g.adj[b] - {a}


def pendant_vertices(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if len(g.adj[v]) == 1)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")


def attach_pendant(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    return Graph(g.n + 1, [*g.edges, (v, g.n)])


def split_vertex(g: Graph, v: int, kind: str) -> Graph:
    """Add a twin of ``v``; ``kind`` is ``"with_edge"`` or ``"without_edge"``."""
    _check_vertex(g, v)
    if kind not in ("with_edge", "without_edge"):
        raise ValueError(f"unknown split kind {kind!r}")
    new = g.n
    edges = [*g.edges, *((w, new) for w in g.adj[v])]
    if kind == "with_edge":
        edges.append((v, new))
    return Graph(g.n + 1, edges)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``keep``; returns it with the old->new index map.

    New indices follow the increasing order of the kept vertices.
    """
    kept = sorted(set(int(v) for v in keep))
    if not kept:
        raise ValueError("cannot induce on an empty vertex set")
    for v in kept:
        _check_vertex(g, v)
    remap = {v: i for i, v in enumerate(kept)}
    edges = [(remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap]
    return Graph(len(kept), edges), remap


def is_twin_equivalence(g: Graph, e: EquivalenceRelation) -> bool:
    # twinness is transitive, so checking against one member per class suffices
    return all(are_twins(g, c[0], v) for c in e.classes for v in c[1:])


def quotient_graph(g: Graph, e: EquivalenceRelation) -> Graph:
    """Graph on the classes of a twin equivalence ``e``.

    Vertex ``i`` of the result is ``e.classes.classes[i]``.
    """
    if e.n != g.n:
        raise ValueError("equivalence relation lives on a different vertex set")
    if not is_twin_equivalence(g, e):
        raise ValueError("not a twin equivalence of the graph")
    classes = e.classes.classes
    edges = set()
    for i, ci in enumerate(classes):
        for j in range(i + 1, len(classes)):
            cj = classes[j]
            if all(b in g.adj[a] for a in ci for b in cj):
                edges.add((i, j))
    return Graph(len(classes), edges)


# -- standard families -------------------------------------------------------


def _positive(k: int, what: str) -> None:
    if k < 1:
        raise ValueError(f"{what} must be at least 1")


def complete(n: int) -> Graph:
    _positive(n, "n")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def empty(n: int) -> Graph:
    _positive(n, "n")
    return Graph(n)


def complete_bipartite(a: int, b: int) -> Graph:
    _positive(a, "a")
    _positive(b, "b")
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, ((v, (v + 1) % n) for v in range(n)))


def path(n: int) -> Graph:
    _positive(n, "n")
    return Graph(n, ((v, v + 1) for v in range(n - 1)))


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def cocktail_party(k: int) -> Graph:
    """``K_{2k}`` minus the perfect matching ``{2i, 2i+1}``."""
    _positive(k, "k")
    n = 2 * k
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if u // 2 != v // 2))


def complement(g: Graph) -> Graph:
    return Graph(g.n, ((u, v) for u in range(g.n) for v in range(u + 1, g.n) if v not in g.adj[u]))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, [*g.edges, *((u + g.n, v + g.n) for u, v in h.edges)])


def cartesian_product(g: Graph, h: Graph) -> Graph:
    def idx(a, b):
        return a * h.n + b

    edges = [(idx(a, b), idx(a, c)) for a in range(g.n) for b, c in h.edges]
    edges += [(idx(a, b), idx(c, b)) for b in range(h.n) for a, c in g.edges]
    return Graph(g.n * h.n, edges)


def prism(k: int = 3) -> Graph:
    """``C_k x K_2``."""
    return cartesian_product(cycle(k), complete(2))


def rook_graph(k: int = 4) -> Graph:
    """``K_k x K_k``; for ``k = 4`` an srg(16, 6, 2, 2)."""
    return cartesian_product(complete(k), complete(k))


def shrikhande() -> Graph:
    """Cayley graph of ``Z_4 x Z_4`` with connection set ``±(0,1), ±(1,0), ±(1,1)``."""
    gens = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)]
    edges = set()
    for a in range(4):
        for b in range(4):
            for da, db in gens:
                u, v = 4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4
                edges.add((min(u, v), max(u, v)))
    return Graph(16, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
