"""Canonical forms of simplicial complexes.

Colour refinement over the 1-skeleton and facet incidences, then
individualisation/refinement with backtracking.  The canonical form is the
lexicographically smallest sorted facet list over all leaves of the search
tree, with automorphism pruning: once two leaves give
the same form, the corresponding permutation is an automorphism, and branches
in the same orbit of the automorphisms found so far (fixing the current path)
are skipped.
"""
from __future__ import annotations

from .complex_core import SimplicialComplex, vertices_of


class _Structure:
    __slots__ = ("n", "nbrs", "facets", "incidence")

    def __init__(self, K: SimplicialComplex):
        old = K.vertices
        idx = {v: i for i, v in enumerate(old)}
        self.n = len(old)
        self.facets = [tuple(idx[v] for v in vertices_of(f)) for f in K.facets]
        g = K.graph
        self.nbrs = [tuple(idx[u] for u in vertices_of(g.adj[v])) for v in old]
        self.incidence = [[] for _ in range(self.n)]
        for fi, f in enumerate(self.facets):
            for v in f:
                self.incidence[v].append(fi)


def _rank(sigs: list) -> list[int]:
    table = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [table[s] for s in sigs]


def _refine(S: _Structure, colors: list[int]) -> list[int]:
    ncls = len(set(colors))
    while True:
        fsig = [tuple(sorted(colors[v] for v in f)) for f in S.facets]
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[u] for u in S.nbrs[v])),
                tuple(sorted(fsig[fi] for fi in S.incidence[v])),
            )
            for v in range(S.n)
        ]
        colors = _rank(sigs)
        k = len(set(colors))
        if k == ncls:
            return colors
        ncls = k


def _individualize(colors: list[int], v: int) -> list[int]:
    return _rank([(c, 0 if u == v else 1) for u, c in enumerate(colors)])


def _target_cell(colors: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _form(S: _Structure, colors: list[int]) -> tuple[int, ...]:
    return tuple(sorted(sum(1 << colors[v] for v in f) for f in S.facets))


class _Orbits:
    """Union–find over vertices for the group generated by found automorphisms."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def canonical_labeling(K: SimplicialComplex) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(form, order)``: the canonical facet masks and, for each canonical
    label ``i``, the original vertex id ``order[i]``."""
    S = _Structure(K)
    if S.n == 0:
        return tuple(0 for _ in K.facets), ()
    init = _rank([(len(S.nbrs[v]), tuple(sorted(len(S.facets[fi]) for fi in S.incidence[v])))
                  for v in range(S.n)])
    best: list = [None, None]  # form, colors
    automorphisms: list[list[int]] = []

    def search(colors: list[int], path_fixed: list[int]) -> None:
        colors = _refine(S, colors)
        cell = _target_cell(colors)
        if cell is None:
            form = _form(S, colors)
            if best[0] is None or form < best[0]:
                best[0], best[1] = form, colors
            elif form == best[0]:
                # same form from two labelings: composing gives an automorphism
                inv = [0] * S.n
                for v, c in enumerate(best[1]):
                    inv[c] = v
                automorphisms.append([inv[colors[v]] for v in range(S.n)])
            return
        tried: list[int] = []
        for v in cell:
            if tried and _pruned(v, tried, path_fixed):
                continue
            tried.append(v)
            search(_individualize(colors, v), path_fixed + [v])

    def _pruned(v: int, tried: list[int], fixed: list[int]) -> bool:
        orb = _Orbits(S.n)
        for perm in automorphisms:
            if all(perm[x] == x for x in fixed):
                for x in range(S.n):
                    orb.union(x, perm[x])
        rv = orb.find(v)
        return any(orb.find(t) == rv for t in tried)

    search(init, [])
    colors = best[1]
    order = [0] * S.n
    old = K.vertices
    for v, c in enumerate(colors):
        order[c] = old[v]
    return best[0], tuple(order)


def canonical_form(K: SimplicialComplex) -> tuple[int, ...]:
    return canonical_labeling(K)[0]


def is_isomorphic(K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
    if K1.n != K2.n or len(K1.facets) != len(K2.facets):
        return False
    if sorted(f.bit_count() for f in K1.facets) != sorted(f.bit_count() for f in K2.facets):
        return False
    if sorted(K1.graph.degree(v) for v in K1.vertices) != sorted(K2.graph.degree(v) for v in K2.vertices):
        return False
    return canonical_form(K1) == canonical_form(K2)
