"""Rainbows, coherent configurations and the 2-dimensional WL closure.

A configuration on ``n`` points is stored as an ``n x n`` integer matrix
whose entry ``(a, b)`` is the colour (basis relation) containing the pair.
Colour ids are dense, ``0..k-1``.
"""
from __future__ import annotations

import enum
import json
from collections.abc import Iterable, Sequence
from functools import cached_property

import numpy as np

from . import kernels
from .graphs import EquivalenceRelation, Graph, Partition

SCHEMA = "wldh.configuration/1"


class NotARainbowError(ValueError):
    pass


class NotParabolicError(ValueError):
    pass


class CoherenceViolation(Exception):
    """Two pairs of colour ``t`` see different numbers of ``(r, s)`` paths."""

    def __init__(self, r: int, s: int, t: int, pair, other, counts):
        self.r, self.s, self.t = r, s, t
        self.pair, self.other, self.counts = pair, other, counts
        super().__init__(
            f"c[{r},{s}]^{t} is {counts[0]} at {pair} but {counts[1]} at {other}"
        )

    def as_dict(self) -> dict:
        return {
            "r": self.r, "s": self.s, "t": self.t,
            "pair": list(self.pair), "other": list(self.other), "counts": list(self.counts),
        }


def _dense(matrix) -> np.ndarray:
    """Renumber colour ids to ``0..k-1`` keeping their relative order."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotARainbowError("colour matrix must be square")
    _, inv = np.unique(m, return_inverse=True)
    return inv.reshape(m.shape).astype(np.int64)


class IntersectionTensor:
    """Sparse intersection numbers ``c[r, s, t]``; missing keys are zero."""

    def __init__(self, entries: dict[tuple[int, int, int], int]):
        self.entries = {key: int(v) for key, v in sorted(entries.items()) if v}

    def __getitem__(self, key: tuple[int, int, int]) -> int:
        return self.entries.get(key, 0)

    def __iter__(self):
        for (r, s, t), c in self.entries.items():
            yield r, s, t, c

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, IntersectionTensor) and self.entries == other.entries

    def __repr__(self):
        return f"IntersectionTensor({len(self.entries)} nonzero entries)"

    def as_list(self) -> list[list[int]]:
        return [[r, s, t, c] for r, s, t, c in self]


class Rainbow:
    """Partition of ``Omega x Omega`` closed under transposition with the
    diagonal a union of classes."""

    def __init__(self, color_matrix, *, seed: dict | None = None, rounds: int | None = None):
        c = _dense(color_matrix)
        c.setflags(write=False)
        self.color = c
        self.n = c.shape[0]
        self.seed = seed
        self.rounds = rounds
        flat = c.ravel()
        k = int(flat.max()) + 1 if flat.size else 0
        self.k = k
        _, first = np.unique(flat, return_index=True)
        self.reps: tuple[tuple[int, int], ...] = tuple(divmod(int(i), self.n) for i in first)
        self.sizes = np.bincount(flat, minlength=k)

        diag_mask = np.eye(self.n, dtype=bool).ravel()
        on_diag = np.bincount(flat[diag_mask], minlength=k)
        if np.any((on_diag > 0) & (on_diag != self.sizes)):
            raise NotARainbowError("the diagonal is not a union of colour classes")
        self.reflexive = on_diag > 0

        transpose = np.array([c[b, a] for a, b in self.reps], dtype=np.int64)
        if np.any(transpose[flat] != c.T.ravel()):
            raise NotARainbowError("colour classes are not closed under transposition")
        self.transpose = transpose

        fiber_colors = [s for s in range(k) if self.reflexive[s]]
        index = {s: i for i, s in enumerate(fiber_colors)}
        self.fiber_colors: tuple[int, ...] = tuple(fiber_colors)
        self.fiber_of = np.array([index[int(c[a, a])] for a in range(self.n)], dtype=np.int64)
        self.fibers: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(a) for a in np.nonzero(self.fiber_of == i)[0]) for i in range(len(fiber_colors))
        )
        self.src_fiber = np.array([self.fiber_of[a] for a, _ in self.reps], dtype=np.int64)
        self.dst_fiber = np.array([self.fiber_of[b] for _, b in self.reps], dtype=np.int64)

    # -- basic accessors ---------------------------------------------------

    def r(self, a: int, b: int) -> int:
        return int(self.color[a, b])

    def mask(self, colors: Iterable[int]) -> np.ndarray:
        return np.isin(self.color, list(colors))

    def pairs(self, s: int) -> list[tuple[int, int]]:
        aa, bb = np.nonzero(self.color == s)
        return list(zip(aa.tolist(), bb.tolist()))

    def fiber_partition(self) -> Partition:
        return Partition(self.fibers, self.n)

    def basis_relations(self) -> list[np.ndarray]:
        return [self.color == s for s in range(self.k)]

    def colors_of(self, relation: np.ndarray) -> frozenset[int]:
        """Colours making up ``relation``; raises if it is not a union of them."""
        rel = np.asarray(relation, dtype=bool)
        inside = set(np.unique(self.color[rel]).tolist())
        outside = set(np.unique(self.color[~rel]).tolist())
        if inside & outside:
            raise ValueError("relation is not a union of basis relations")
        return frozenset(inside)

    @cached_property
    def valencies(self) -> np.ndarray:
        """``|alpha s|`` for ``alpha`` in the source fibre (exact in coherent configurations)."""
        src_sizes = np.array([len(self.fibers[f]) for f in self.src_fiber], dtype=np.int64)
        return self.sizes // np.maximum(src_sizes, 1)

    @cached_property
    def tensor(self) -> IntersectionTensor:
        """Intersection numbers read off one representative pair per colour."""
        k = self.k
        entries = {}
        for t, (a, b) in enumerate(self.reps):
            codes = self.color[a, :] * k + self.color[:, b]
            vals, counts = np.unique(codes, return_counts=True)
            for code, cnt in zip(vals.tolist(), counts.tolist()):
                entries[(code // k, code % k, t)] = cnt
        return IntersectionTensor(entries)

    def __eq__(self, other):
        return isinstance(other, Rainbow) and np.array_equal(self.color, other.color)

    def __hash__(self):
        return hash(self.color.tobytes())

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, colors={self.k}, fibers={len(self.fibers)})"


class CoherentConfiguration(Rainbow):
    """A rainbow whose intersection numbers are well defined.

    Construction does not re-verify coherence; use :func:`validate_coherence`
    (or :meth:`checked`) for arbitrary input.
    """

    @classmethod
    def checked(cls, color_matrix) -> CoherentConfiguration:
        x = cls(color_matrix)
        validate_coherence(x)
        return x


# -- closure -------------------------------------------------------------------


def _relation_masks(relations: Iterable, n: int) -> list[np.ndarray]:
    masks = []
    for rel in relations:
        if isinstance(rel, np.ndarray):
            m = np.asarray(rel, dtype=bool)
            if m.shape != (n, n):
                raise ValueError(f"relation matrix has shape {m.shape}, expected {(n, n)}")
        else:
            m = np.zeros((n, n), dtype=bool)
            for a, b in rel:
                if not (0 <= a < n and 0 <= b < n):
                    raise ValueError(f"pair ({a}, {b}) out of range for n={n}")
                m[a, b] = True
        masks.append(m)
    return masks


def initial_coloring(relations: Sequence, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Colour of ``(a, b)``: ``(a == b, memberships of (a, b), memberships of (b, a))``.

    Returns the colour matrix and the sorted table of distinct keys.
    """
    masks = _relation_masks(relations, n)
    cols = [np.eye(n, dtype=np.int64).ravel()]
    cols += [m.ravel().astype(np.int64) for m in masks]
    cols += [m.T.ravel().astype(np.int64) for m in masks]
    keys = np.stack(cols, axis=1)
    ranks = kernels.rank_rows(keys)
    k = int(ranks.max()) + 1 if ranks.size else 0
    table = np.zeros((k, keys.shape[1]), dtype=np.int64)
    table[ranks] = keys
    return ranks.reshape(n, n), table


def wl_closure(relations: Sequence, n: int) -> CoherentConfiguration:
    """Coarsest coherent configuration in which every relation is a union of colours.

    Iterated pair refinement: each round recolours ``(a, b)`` by its old colour
    together with the multiset of ``(colour(a, g), colour(g, b))`` over all ``g``.
    New ids follow the lexicographic order of those keys, so the result is
    equivariant under relabelling of the points.
    """
    color, table = initial_coloring(relations, n)
    if n == 0:
        return CoherentConfiguration(np.zeros((0, 0), dtype=np.int64))
    k = table.shape[0]
    ancestor = np.arange(k)
    rounds = 0
    while True:
        keys = kernels.pair_keys(color, k)
        new = kernels.rank_rows(keys)
        k_new = int(new.max()) + 1
        if k_new == k:
            break
        anc = np.empty(k_new, dtype=np.int64)
        anc[new] = ancestor[color.ravel()]
        ancestor = anc
        color = new.reshape(n, n)
        k = k_new
        rounds += 1
    seed = {"keys": table.tolist(), "ancestor": ancestor.tolist()}
    return CoherentConfiguration(color, seed=seed, rounds=rounds)


def wl_of_graph(g: Graph, pi: Partition | None = None) -> CoherentConfiguration:
    """Closure of ``E(g)`` together with ``1_D`` for every class ``D`` of ``pi``."""
    if pi is None:
        pi = Partition.trivial(g.n)
    if pi.n != g.n:
        raise ValueError("partition lives on a different vertex set")
    rels = [g.matrix]
    for cls in pi.classes:
        d = np.zeros((g.n, g.n), dtype=bool)
        idx = list(cls)
        d[idx, idx] = True
        rels.append(d)
    return wl_closure(rels, g.n)


def discrete_configuration(n: int) -> CoherentConfiguration:
    return CoherentConfiguration(np.arange(n * n, dtype=np.int64).reshape(n, n))


# -- coherence ---------------------------------------------------------------


def validate_coherence(x: Rainbow) -> IntersectionTensor:
    """Return the intersection tensor, or raise :class:`CoherenceViolation`."""
    if x.n == 0:
        return IntersectionTensor({})
    keys = kernels.pair_keys(x.color, x.k)
    ranks = kernels.rank_rows(keys)
    if int(ranks.max()) + 1 != x.k:
        raise _first_violation(x, keys)
    return x.tensor


def _first_violation(x: Rainbow, keys: np.ndarray) -> CoherenceViolation:
    n, k = x.n, x.k
    for t, (a, b) in enumerate(x.reps):
        ref = keys[a * n + b]
        rows = np.nonzero(x.color.ravel() == t)[0]
        for row in rows:
            if not np.array_equal(keys[row], ref):
                a2, b2 = divmod(int(row), n)
                c1 = dict(zip(*np.unique(ref[1:], return_counts=True)))
                c2 = dict(zip(*np.unique(keys[row][1:], return_counts=True)))
                code = min(c for c in set(c1) | set(c2) if c1.get(c, 0) != c2.get(c, 0))
                return CoherenceViolation(
                    int(code // k), int(code % k), t, (a, b), (a2, b2),
                    (int(c1.get(code, 0)), int(c2.get(code, 0))),
                )
    raise AssertionError("rank count disagrees but no violating pair found")


def is_coherent(x: Rainbow) -> bool:
    try:
        validate_coherence(x)
    except CoherenceViolation:
        return False
    return True


# -- restrictions, parabolics, quotients --------------------------------------


def _rebuild(x: Rainbow, matrix: np.ndarray) -> Rainbow:
    return type(x)(matrix)


def restriction(x: Rainbow, points: Iterable[int]) -> Rainbow:
    """Configuration induced on a union of fibres; points keep their order."""
    pts = sorted(set(int(p) for p in points))
    chosen = set(pts)
    for fib in x.fibers:
        hit = chosen.intersection(fib)
        if hit and len(hit) != len(fib):
            raise ValueError("point set is not a union of fibres")
    idx = np.array(pts, dtype=np.int64)
    return _rebuild(x, x.color[np.ix_(idx, idx)])


def is_equivalence(mask: np.ndarray) -> bool:
    m = np.asarray(mask, dtype=bool)
    if not m.diagonal().all() or (m != m.T).any():
        return False
    mi = m.astype(np.int64)
    return not ((mi @ mi > 0) & ~m).any()


def is_parabolic(x: Rainbow, colors: Iterable[int]) -> bool:
    """Whether the union of the given colour classes is an equivalence relation."""
    cs = set(int(c) for c in colors)
    bad = [c for c in cs if not 0 <= c < x.k]
    if bad:
        raise ValueError(f"unknown colour ids {sorted(bad)}")
    return is_equivalence(x.mask(cs))


def equivalence_from_mask(mask: np.ndarray) -> EquivalenceRelation:
    aa, bb = np.nonzero(np.asarray(mask, dtype=bool))
    return EquivalenceRelation(mask.shape[0], zip(aa.tolist(), bb.tolist()))


def parabolic_colors(x: Rainbow, e: EquivalenceRelation | Iterable[int]) -> frozenset[int]:
    """Colour set of a parabolic given either as colours or as an equivalence."""
    if isinstance(e, EquivalenceRelation):
        if e.n != x.n:
            raise NotParabolicError("equivalence lives on a different point set")
        try:
            cs = x.colors_of(e.matrix())
        except ValueError:
            raise NotParabolicError("equivalence is not a union of basis relations") from None
    else:
        cs = frozenset(int(c) for c in e)
    if not is_parabolic(x, cs):
        raise NotParabolicError("colour union is not an equivalence relation")
    return cs


def rho_images(x: Rainbow, e: EquivalenceRelation) -> list[frozenset[tuple[int, int]]]:
    """For each colour ``s``, the set of class pairs hit by ``s``."""
    cls = np.asarray(e.class_index, dtype=np.int64)
    q = len(e.classes)
    codes = (cls[:, None] * q + cls[None, :]).ravel()
    flat = x.color.ravel()
    order = np.argsort(flat, kind="stable")
    bounds = np.searchsorted(flat[order], np.arange(x.k + 1))
    out = []
    for s in range(x.k):
        hit = np.unique(codes[order[bounds[s] : bounds[s + 1]]])
        out.append(frozenset(divmod(int(h), q) for h in hit))
    return out


def quotient_config(x: Rainbow, e: EquivalenceRelation | Iterable[int]) -> Rainbow:
    """Configuration on the classes of a parabolic ``e``.

    Point ``i`` of the result is the ``i``-th class of ``e`` (classes ordered by
    least element); the colour of a class pair is named after the least colour
    id mapping onto it.
    """
    cs = parabolic_colors(x, e)
    if not isinstance(e, EquivalenceRelation):
        e = equivalence_from_mask(x.mask(cs))
    q = len(e.classes)
    images = rho_images(x, e)
    out = np.full((q, q), -1, dtype=np.int64)
    for s, img in enumerate(images):
        for i, j in img:
            if out[i, j] == -1:
                out[i, j] = s
    # the images must partition the class pairs
    for s, img in enumerate(images):
        name = {int(out[i, j]) for i, j in img}
        if len(name) != 1 or images[name.pop()] != img:
            raise NotParabolicError("images of basis relations overlap; not a parabolic quotient")
    return _rebuild(x, out)


# -- comparison and serialisation ---------------------------------------------


class Order(enum.Enum):
    EQUAL = "equal"
    LE = "a<=b"
    GE = "b<=a"
    INCOMPARABLE = "incomparable"


def compare(a: Rainbow, b: Rainbow) -> Order:
    """Compare pair partitions; ``a <= b`` when every colour of ``a`` is a union of colours of ``b``."""
    if a.n != b.n:
        raise ValueError(f"point counts differ: {a.n} vs {b.n}")
    if a.n == 0:
        return Order.EQUAL
    joint = np.unique(b.color.ravel() * a.k + a.color.ravel()).size
    a_le_b = joint == b.k
    b_le_a = joint == a.k
    if a_le_b and b_le_a:
        return Order.EQUAL
    if a_le_b:
        return Order.LE
    if b_le_a:
        return Order.GE
    return Order.INCOMPARABLE


def invariant_components(x: Rainbow) -> list[tuple[str, object]]:
    """Named, relabelling-invariant pieces of a canonically coloured configuration."""
    comps: list[tuple[str, object]] = [
        ("n", x.n),
        ("fiber_sizes", [len(f) for f in x.fibers]),
        ("colors", x.k),
        ("transpose", x.transpose.tolist()),
        (
            "color_fibers",
            [[int(x.src_fiber[s]), int(x.dst_fiber[s]), int(x.valencies[s])] for s in range(x.k)],
        ),
    ]
    if x.seed is not None:
        comps.append(("seed", x.seed))
    comps.append(("tensor", x.tensor.as_list()))
    return comps


def canonical_invariant(x: Rainbow) -> bytes:
    return json.dumps(invariant_components(x), separators=(",", ":")).encode()


def to_json(x: Rainbow) -> dict:
    return {
        "schema": SCHEMA,
        "n": x.n,
        "colors": x.k,
        "color_matrix": x.color.ravel().tolist(),
        "transpose": x.transpose.tolist(),
        "fibers": [list(f) for f in x.fibers],
        "valencies": x.valencies.tolist(),
        "tensor": x.tensor.as_list(),
    }


def from_json(data: dict) -> Rainbow:
    """Rebuild a rainbow from :func:`to_json` output (coherence not assumed)."""
    n = int(data["n"])
    flat = np.asarray(data["color_matrix"], dtype=np.int64)
    if flat.size != n * n:
        raise ValueError(f"color_matrix has {flat.size} entries, expected {n * n}")
    return Rainbow(flat.reshape(n, n))
