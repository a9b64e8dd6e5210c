"""Half-integral perfect matchings in complement graphs and the h-vector
inequalities they yield (including the balanced variant)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complex_core import ComplexError, Graph, SimplicialComplex, is_octahedral, vertices_of
from .report import Report, verdict_of
from .vectors import IntPolynomial, h_polynomial, poly_leq

HALF_TUTTE_CAP = 20
COLORING_NODE_CAP = 10**7
_WEIGHT_TEXT = {0: "0", 1: "1/2", 2: "1"}


class SearchCapExceeded(RuntimeError):
    pass


def complement_graph(G: Graph) -> Graph:
    return G.complement()


# -- maximum bipartite matching ----------------------------------------------------


def hopcroft_karp(left: list[int], adj: dict[int, list[int]]) -> dict[int, int]:
    """Maximum matching of a bipartite graph; returns left → right."""
    INF = float("inf")
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        q = deque()
        for u in left:
            if u in match_l:
                dist[u] = INF
            else:
                dist[u] = 0
                q.append(u)
        found = False
        while q:
            u = q.popleft()
            for r in adj[u]:
                w = match_r.get(r)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for r in adj[u]:
            w = match_r.get(r)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = r
                match_r[r] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if u not in match_l:
                dfs(u)
    return match_l


@dataclass(frozen=True)
class HalfIntegralMatching:
    """Edge weights in halves: 0, 1 (= 1/2) or 2 (= 1), keyed by ``(u, v)`` with u < v."""

    weights: dict[tuple[int, int], int]

    def weight(self, u: int, v: int) -> Fraction:
        return Fraction(self.weights.get((min(u, v), max(u, v)), 0), 2)

    def vertex_sums(self) -> dict[int, Fraction]:
        sums: dict[int, int] = {}
        for (u, v), w in self.weights.items():
            sums[u] = sums.get(u, 0) + w
            sums[v] = sums.get(v, 0) + w
        return {v: Fraction(s, 2) for v, s in sums.items()}

    def is_valid(self, G: Graph) -> bool:
        if any(w not in (0, 1, 2) or not G.has_edge(u, v) for (u, v), w in self.weights.items()):
            return False
        sums = self.vertex_sums()
        return all(sums.get(v, 0) == 1 for v in G.vertices)

    def to_json(self) -> list:
        return [[u, v, _WEIGHT_TEXT[w]] for (u, v), w in sorted(self.weights.items())]


def half_integral_pm(G: Graph) -> HalfIntegralMatching | None:
    """Perfect matching in the bipartite double cover, folded back onto G."""
    verts = list(G.vertices)
    adj = {v: list(vertices_of(G.adj[v])) for v in verts}
    m = hopcroft_karp(verts, adj)
    if len(m) != len(verts):
        return None
    weights = {(u, v): 0 for u, v in G.edges}
    for a, b in m.items():
        weights[(min(a, b), max(a, b))] += 1
    return HalfIntegralMatching(weights)


@dataclass
class MatchingDecomposition:
    matching_edges: list[tuple[int, int]]
    odd_cycles: list[tuple[int, ...]]

    def oriented_edges(self) -> list[tuple[int, int]]:
        """Matching edges as 2-cycles, odd cycles oriented cyclically."""
        out = []
        for u, v in self.matching_edges:
            out += [(u, v), (v, u)]
        for c in self.odd_cycles:
            out += [(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]
        return out

    def covered(self) -> list[int]:
        return sorted([x for e in self.matching_edges for x in e] + [x for c in self.odd_cycles for x in c])

    def as_matching(self) -> HalfIntegralMatching:
        w: dict[tuple[int, int], int] = {}
        for u, v in self.matching_edges:
            w[(min(u, v), max(u, v))] = 2
        for c in self.odd_cycles:
            for i in range(len(c)):
                a, b = c[i], c[(i + 1) % len(c)]
                w[(min(a, b), max(a, b))] = 1
        return HalfIntegralMatching(w)

    def to_json(self) -> dict:
        return {"matching_edges": [list(e) for e in self.matching_edges], "odd_cycles": [list(c) for c in self.odd_cycles]}


def decompose(h: HalfIntegralMatching) -> MatchingDecomposition:
    """Weight-1 edges become matching edges; the weight-1/2 support is a union
    of disjoint cycles, of which even ones are re-rounded into matchings."""
    full = sorted(e for e, w in h.weights.items() if w == 2)
    half_adj: dict[int, list[int]] = {}
    for (u, v), w in h.weights.items():
        if w == 1:
            half_adj.setdefault(u, []).append(v)
            half_adj.setdefault(v, []).append(u)
    in_full = {x for e in full for x in e}
    for v, nb in half_adj.items():
        if len(nb) != 2 or v in in_full:
            raise ComplexError(f"half-weight support is not a disjoint union of cycles at vertex {v}")
    matching = list(full)
    cycles = []
    seen: set[int] = set()
    for start in sorted(half_adj):
        if start in seen:
            continue
        c = [start]
        seen.add(start)
        prev, cur = start, min(half_adj[start])
        while cur != start:
            c.append(cur)
            seen.add(cur)
            a, b = half_adj[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(c) % 2:
            cycles.append(tuple(c))
        else:
            matching += [tuple(sorted((c[i], c[i + 1]))) for i in range(0, len(c), 2)]
    return MatchingDecomposition(sorted(matching), cycles)


def _local_adjacency(G: Graph) -> tuple[list[int], list[int]]:
    verts = list(G.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    local = []
    for v in verts:
        m = 0
        for u in vertices_of(G.adj[v]):
            m |= 1 << idx[u]
        local.append(m)
    return verts, local


def half_tutte_brute(G: Graph, cap: int = HALF_TUTTE_CAP) -> Report:
    """For every X ⊆ V, G − X has at most |X| isolated vertices (all 2^|V| subsets)."""
    verts, local = _local_adjacency(G)
    n = len(verts)
    if n > cap:
        raise SearchCapExceeded(f"{n} vertices exceed the half-Tutte cap {cap}")
    X = np.arange(1 << n, dtype=np.int64)
    size = np.zeros(1 << n, dtype=np.int64)
    isolated = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        in_x = (X >> i) & 1
        size += in_x
        isolated += (in_x == 0) & ((np.int64(local[i]) & ~X) == 0)
    bad = np.nonzero(isolated > size)[0]
    pm = half_integral_pm(G) is not None
    ok = bad.size == 0
    witness = {}
    if not ok:
        x = int(bad[0])
        xs = [verts[i] for i in range(n) if x >> i & 1]
        iso = [verts[i] for i in range(n) if not x >> i & 1 and local[i] & ~x == 0]
        witness = {"X": xs, "isolated": iso}
    return Report(
        check="half-tutte",
        verdict=verdict_of(ok),
        witnesses=witness,
        details={"vertices": n, "pm_exists": pm, "agrees_with_matching": pm == ok},
        parameters={"cap": cap},
    )


# -- facets and inequalities ---------------------------------------------------


def _disjoint_by_links(K: SimplicialComplex, F: int) -> int | None:
    if K.dim <= 0:
        return next((f for f in K.facets if f & F == 0), None)
    v = (F & -F).bit_length() - 1
    F2 = _disjoint_by_links(K.link_mask(1 << v), F & ~(1 << v))
    if F2 is None:
        return None
    others = [f for f in K.facets if f & F2 == F2 and not f >> v & 1]
    if len(others) != 1 or others[0] & F:
        return None
    return others[0]


def disjoint_facet(K: SimplicialComplex, F) -> tuple[int, ...] | None:
    """A facet disjoint from ``F``: first by descending through vertex links,
    then by direct search."""
    Fm = F if isinstance(F, int) else sum(1 << v for v in F)
    if Fm not in K.facets:
        raise ComplexError(f"not a facet: {vertices_of(Fm)}")
    G = _disjoint_by_links(K, Fm)
    if G is None:
        G = next((f for f in K.facets if f & Fm == 0), None)
    return None if G is None else vertices_of(G)


def disjoint_facet_check(K: SimplicialComplex) -> Report:
    missing = [vertices_of(F) for F in K.facets if disjoint_facet(K, F) is None]
    return Report(
        check="disjoint-facet",
        verdict=verdict_of(not missing),
        witnesses={"facets_without_disjoint_partner": missing} if missing else {},
        details={"facets": len(K.facets)},
    )


def _link_h(K: SimplicialComplex, v: int) -> IntPolynomial:
    return h_polynomial(K.link_mask(1 << v))


def shelling_inequality_check(K: SimplicialComplex, u: int, v: int) -> Report:
    """h(lk_v) + t·h(lk_u) ≤ h(K); equality expected iff every facet contains u or v."""
    if u == v or K.graph.has_edge(u, v):
        raise ComplexError(f"{u}{v} is an edge (or a loop); a non-edge is required")
    lhs = _link_h(K, v) + _link_h(K, u).shift(1)
    rhs = h_polynomial(K)
    holds = poly_leq(lhs, rhs)
    equal = lhs == rhs
    suspended = all(f >> u & 1 or f >> v & 1 for f in K.facets)
    ok = holds and equal == suspended
    return Report(
        check="shelling",
        verdict=verdict_of(ok),
        details={"u": u, "v": v, "lhs": lhs, "rhs": rhs, "equality": equal, "suspension_over_uv": suspended},
        witnesses={} if ok else {"u": u, "v": v, "lhs": lhs, "rhs": rhs},
    )


def h_ineq_sides(K: SimplicialComplex) -> tuple[IntPolynomial, IntPolynomial]:
    s = IntPolynomial()
    for v in K.vertices:
        s = s + _link_h(K, v)
    return s + s.shift(1), K.n * h_polynomial(K)


def h_ineq_check(K: SimplicialComplex, certification: str | None = None) -> Report:
    """(1+t) Σ_v h(lk_v) ≤ f_0 · h(K), tight exactly for crosspolytopes."""
    lhs, rhs = h_ineq_sides(K)
    holds = poly_leq(lhs, rhs)
    tight = lhs == rhs
    cross = is_octahedral(K)
    ok = holds and tight == cross
    return Report(
        check="h-ineq",
        verdict=verdict_of(ok),
        details={"lhs": lhs, "rhs": rhs, "tight": tight, "crosspolytope": cross, "slack": rhs - lhs},
        witnesses={} if ok else {"lhs": lhs, "rhs": rhs, "tight": tight, "crosspolytope": cross},
        parameters={"certification": certification},
    )


def h_ineq_via_matching(K: SimplicialComplex) -> Report:
    """Sum the per-non-edge shelling inequality over a decomposition of the
    complement graph and compare with the aggregate inequality."""
    pm = half_integral_pm(K.graph.complement())
    if pm is None:
        return Report("h-ineq-matching", "fail", witnesses={"reason": "complement has no half-integral perfect matching"})
    dec = decompose(pm)
    link_h = {v: _link_h(K, v) for v in K.vertices}
    h = h_polynomial(K)
    lhs_sum, rhs_sum = IntPolynomial(), IntPolynomial()
    failing = []
    for a, b in dec.oriented_edges():
        lhs = link_h[a] + link_h[b].shift(1)
        if not poly_leq(lhs, h):
            failing.append([a, b])
        lhs_sum = lhs_sum + lhs
        rhs_sum = rhs_sum + h
    agg_lhs, agg_rhs = h_ineq_sides(K)
    identity = lhs_sum == agg_lhs and rhs_sum == agg_rhs
    ok = identity and not failing
    return Report(
        check="h-ineq-matching",
        verdict=verdict_of(ok),
        details={"decomposition": dec, "sum_lhs": lhs_sum, "sum_rhs": rhs_sum, "identity": identity},
        witnesses={} if ok else {"failing_oriented_edges": failing, "identity": identity},
    )


def h1hi_ineq_check(K: SimplicialComplex) -> Report:
    """h_1 h_i ≥ (d−i+1) h_{i−1} + (i+1) h_{i+1}, evaluated for 0 ≤ i ≤ d with
    h_{−1} = h_{d+1} = 0.  Also confirms the slack equals the slack of the
    aggregate link inequality at t^i (the two differ by McMullen's formula)."""
    d = K.dim + 1
    h = h_polynomial(K)
    lhs1, rhs1 = h_ineq_sides(K)
    rows = []
    for i in range(d + 1):
        lhs = h[1] * h[i]
        rhs = (d - i + 1) * h[i - 1] + (i + 1) * h[i + 1]
        rows.append({"i": i, "lhs": lhs, "rhs": rhs, "holds": lhs >= rhs, "equal": lhs == rhs,
                     "slack_matches_aggregate": lhs - rhs == rhs1[i] - lhs1[i]})
    holding = [r["i"] for r in rows if r["holds"]]
    ok = all(r["holds"] for r in rows if 1 <= r["i"] <= d)
    derivation = all(r["slack_matches_aggregate"] for r in rows)
    return Report(
        check="h1hi",
        verdict=verdict_of(ok and derivation),
        details={"rows": rows, "holds_for_indices": holding, "index0_holds": rows[0]["holds"],
                 "derivation_consistent": derivation},
        witnesses={} if ok and derivation else {"rows": [r for r in rows if not r["holds"]]},
    )


def balanced_coloring(K: SimplicialComplex, node_cap: int = COLORING_NODE_CAP) -> dict[int, int] | None:
    """A proper (dim+1)-colouring of the 1-skeleton, or None.

    The first facet is coloured 0..d-1 (any proper colouring does so up to
    renaming colours); remaining vertices are coloured most-constrained first.
    """
    d = K.dim + 1
    G = K.graph
    color: dict[int, int] = {}
    for c, v in enumerate(vertices_of(K.facets[0])):
        color[v] = c
    for v, c in color.items():
        if any(color.get(u) == c for u in vertices_of(G.adj[v])):
            return None
    rest = [v for v in K.vertices if v not in color]
    nodes = 0

    def pick() -> int | None:
        best, best_key = None, None
        for v in rest:
            if v in color:
                continue
            used = {color[u] for u in vertices_of(G.adj[v]) if u in color}
            key = (len(used), G.degree(v))
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve() -> bool:
        nonlocal nodes
        v = pick()
        if v is None:
            return True
        used = {color[u] for u in vertices_of(G.adj[v]) if u in color}
        for c in range(d):
            if c in used:
                continue
            nodes += 1
            if nodes > node_cap:
                raise SearchCapExceeded(f"colouring search exceeded {node_cap} nodes")
            color[v] = c
            if solve():
                return True
            del color[v]
        return False

    return dict(sorted(color.items())) if solve() else None


def balanced_nonedge_check(K: SimplicialComplex, coloring: dict[int, int] | None = None) -> Report:
    if coloring is None:
        coloring = balanced_coloring(K)
        if coloring is None:
            return Report("balanced", "fail", witnesses={"reason": "not balanced"})
    G = K.graph
    for u, v in G.edges:
        if coloring[u] == coloring[v]:
            raise ComplexError(f"improper colouring on edge {u}{v}")
    partners = {}
    for v in K.vertices:
        partners[v] = next((u for u in K.vertices if u != v and coloring[u] == coloring[v]), None)
    lonely = [v for v, u in partners.items() if u is None]
    pm = half_integral_pm(G.complement())
    ineq = h_ineq_check(K)
    ok = not lonely and pm is not None and ineq.verdict == "pass"
    return Report(
        check="balanced",
        verdict=verdict_of(ok),
        details={"coloring": coloring, "same_color_nonneighbour": partners,
                 "complement_matching": pm, "h_ineq": ineq.verdict},
        witnesses={} if ok else {"vertices_without_partner": lonely, "matching_found": pm is not None},
    )


def matching_report(K: SimplicialComplex) -> Report:
    G = K.graph.complement()
    pm = half_integral_pm(G)
    if pm is None:
        return Report("matching", "fail", witnesses={"reason": "no half-integral perfect matching in complement"})
    dec = decompose(pm)
    ok = pm.is_valid(G) and dec.covered() == list(K.vertices) and dec.as_matching().is_valid(G) \
        and all(len(c) % 2 == 1 and len(c) >= 3 for c in dec.odd_cycles)
    return Report(
        check="matching",
        verdict=verdict_of(ok),
        details={"matching": pm, "decomposition": dec},
        witnesses={} if ok else {"matching": pm, "decomposition": dec},
    )

