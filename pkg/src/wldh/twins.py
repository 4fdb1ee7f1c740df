"""Twins inside coherent configurations, matchings and their classification."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .config import (
    Rainbow,
    equivalence_from_mask,
    is_equivalence,
    parabolic_colors,
    rho_images,
    wl_of_graph,
)
from .graphs import EquivalenceRelation, Graph, Partition, are_twins, twin_equivalence


def config_twin_parabolic(x: Rainbow) -> EquivalenceRelation:
    """Points ``a, b`` are related when ``r(g, a) == r(g, b)`` for every other ``g``."""
    c = x.color
    pairs = []
    for fib in x.fibers:
        for i, a in enumerate(fib):
            for b in fib[i + 1 :]:
                same = c[:, a] == c[:, b]
                same[a] = same[b] = True
                if same.all():
                    pairs.append((a, b))
    return EquivalenceRelation(x.n, pairs)


def twin_parabolic_colors(x: Rainbow) -> frozenset[int]:
    return parabolic_colors(x, config_twin_parabolic(x))


# -- characterisation ----------------------------------------------------------


def _condition_absorbs(x: Rainbow, emask: np.ndarray) -> bool:
    """``e . s == s`` for every colour ``s`` disjoint from ``e``.

    Since ``e`` is reflexive the product always contains ``s``; equality means
    that e-related points see identical colours outside their own class.
    """
    e = equivalence_from_mask(emask)
    c = x.color
    for cls in e.classes:
        if len(cls) < 2:
            continue
        outside = np.ones(x.n, dtype=bool)
        outside[list(cls)] = False
        rows = c[np.ix_(cls, outside.nonzero()[0])]
        if (rows != rows[0]).any():
            return False
    return True


def _condition_single_color(x: Rainbow, emask: np.ndarray) -> bool:
    """On every fibre ``D``, ``e_D`` is ``1_D`` or ``e_D - 1_D`` is one colour."""
    for fib in x.fibers:
        idx = np.array(fib)
        sub = emask[np.ix_(idx, idx)].copy()
        np.fill_diagonal(sub, False)
        colors = set(np.unique(x.color[np.ix_(idx, idx)][sub]).tolist())
        if len(colors) > 1:
            return False
        if colors:
            (s,) = colors
            if x.sizes[s] != int(sub.sum()):
                return False
    return True


def _condition_within_fibers(x: Rainbow, emask: np.ndarray) -> bool:
    """Every class of ``e`` lies inside one fibre."""
    aa, bb = np.nonzero(emask)
    return bool((x.fiber_of[aa] == x.fiber_of[bb]).all())


def satisfies_twin_conditions(x: Rainbow, emask: np.ndarray, *, within_fibers: bool = True) -> bool:
    """Absorption and single-colour conditions, plus fibre homogeneity unless disabled.

    Without homogeneity the twin parabolic need not be maximal: on ``P_3`` the
    full relation passes the other two conditions.
    """
    if within_fibers and not _condition_within_fibers(x, emask):
        return False
    return _condition_absorbs(x, emask) and _condition_single_color(x, emask)


def parabolic_closure(x: Rainbow, mask: np.ndarray) -> np.ndarray:
    """Smallest parabolic containing ``mask``."""
    m = np.asarray(mask, dtype=bool) | np.eye(x.n, dtype=bool)
    while True:
        m = m | m.T
        mi = m.astype(np.int64)
        while True:
            nxt = m | ((mi @ mi) > 0)
            if np.array_equal(nxt, m):
                break
            m = nxt
            mi = m.astype(np.int64)
        grown = x.mask(np.unique(x.color[m]).tolist())
        if np.array_equal(grown, m):
            return m
        m = grown


def verify_twin_characterization(x: Rainbow, e: EquivalenceRelation) -> bool:
    """Check that ``e`` is a maximal parabolic satisfying the twin conditions.

    The conditions include fibre homogeneity (see
    :func:`satisfies_twin_conditions`). Maximality is tested against the
    parabolic closure of ``e`` plus one extra colour; any larger parabolic
    satisfying the conditions consists of twins and contains such a closure,
    which then satisfies them too.
    """
    cs = parabolic_colors(x, e)
    emask = x.mask(cs)
    if not satisfies_twin_conditions(x, emask):
        return False
    for s in range(x.k):
        if s in cs:
            continue
        bigger = parabolic_closure(x, emask | (x.color == s))
        if satisfies_twin_conditions(x, bigger):
            return False
    return True


def rho_injective_on_irreflexive(x: Rainbow, e: EquivalenceRelation) -> bool:
    images = rho_images(x, e)
    seen = [images[s] for s in range(x.k) if not x.reflexive[s]]
    return len(set(seen)) == len(seen)


def graph_vs_config_twins(g: Graph, pi: Partition | None = None) -> bool:
    """Config twins are graph twins, and same-fibre graph twins are config twins."""
    x = wl_of_graph(g, pi)
    ex = config_twin_parabolic(x)
    for c in ex.classes:
        for a in c:
            for b in c:
                if not are_twins(g, a, b):
                    return False
    eg = twin_equivalence(g)
    for c in eg.classes:
        for a in c:
            for b in c:
                if x.fiber_of[a] == x.fiber_of[b] and not ex.related(a, b):
                    return False
    return True


# -- matchings -----------------------------------------------------------------


class MatchingKind(enum.Enum):
    PENDANT = "pendant"
    TWIN = "twin"
    PLAIN = "plain"


@dataclass(frozen=True)
class Matching:
    color: int
    domain: tuple[int, ...]
    range: tuple[int, ...]
    image: dict[int, int]

    def __call__(self, point: int) -> int:
        return self.image[point]

    def as_dict(self) -> dict:
        return {
            "color": self.color,
            "domain": list(self.domain),
            "range": list(self.range),
            "map": [[a, b] for a, b in sorted(self.image.items())],
        }


def find_matchings(x: Rainbow) -> list[Matching]:
    out = []
    val = x.valencies
    for m in range(x.k):
        if x.reflexive[m] or val[m] != 1 or val[x.transpose[m]] != 1:
            continue
        image = dict(x.pairs(m))
        out.append(
            Matching(
                color=m,
                domain=tuple(sorted(image)),
                range=tuple(sorted(image.values())),
                image=image,
            )
        )
    return out


def classify_matching(x: Rainbow, g: Graph, m: Matching) -> MatchingKind:
    if x.reflexive[m.color] or x.valencies[m.color] != 1 or x.valencies[x.transpose[m.color]] != 1:
        raise ValueError(f"colour {m.color} is not a matching")
    if set(m.domain) == set(m.range):
        return MatchingKind.PLAIN
    if all(g.adj[d] == frozenset([m(d)]) for d in m.domain):
        return MatchingKind.PENDANT
    if all(are_twins(g, d, m(d)) for d in m.domain):
        return MatchingKind.TWIN
    return MatchingKind.PLAIN


def matching_products_are_basis(x: Rainbow, m: Matching) -> bool:
    """``m . s`` and ``s . m`` are empty or a single colour for every ``s``."""
    mm = (x.color == m.color).astype(np.int64)
    for s in range(x.k):
        sm = (x.color == s).astype(np.int64)
        for prod in ((mm @ sm) > 0, (sm @ mm) > 0):
            if prod.any():
                cols = np.unique(x.color[prod])
                if cols.size != 1 or int(prod.sum()) != x.sizes[cols[0]]:
                    return False
    return True


def as_equivalence(x: Rainbow, colors) -> EquivalenceRelation:
    mask = x.mask(colors)
    if not is_equivalence(mask):
        raise ValueError("colour union is not an equivalence relation")
    return equivalence_from_mask(mask)
