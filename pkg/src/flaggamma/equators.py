"""Equators (induced codimension-one homology spheres) and the conjecture and
structure checks built on them."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complex_core import ComplexError, Graph, SimplicialComplex, mask_of, suspension, vertices_of
from .isomorphism import is_isomorphic
from .moves import c4_free_edges
from .report import FAIL, PASS, TRUNCATED, Report, verdict_of
from .topology import is_homology_ball, is_homology_sphere
from .vectors import IntPolynomial, f_polynomial, gamma_polynomial, poly_leq

DEFAULT_SUBSET_BUDGET = 2_000_000


@dataclass
class EquatorRecord:
    W: tuple[int, ...]
    E: SimplicialComplex
    is_vertex_link: int | None
    gamma_E: IntPolynomial

    @property
    def mask(self) -> int:
        return mask_of(self.W)

    def to_json(self) -> dict:
        return {"W": list(self.W), "vertex_link_of": self.is_vertex_link, "gamma": self.gamma_E.to_json()}


@dataclass
class EquatorEnumeration:
    equators: list[EquatorRecord]
    truncated: bool
    examined: int
    budget: int
    method: str

    def __iter__(self):
        return iter(self.equators)

    def __len__(self) -> int:
        return len(self.equators)


def is_suspension(K: SimplicialComplex) -> tuple[int, int] | None:
    """A non-adjacent pair ``(a, b)`` with K = Σ_{a,b} K[V∖{a,b}], or None."""
    G = K.graph
    vm = K.vertex_mask
    for a in K.vertices:
        for b in vertices_of(vm & ~G.adj[a] & ~((1 << (a + 1)) - 1)):
            ab = (1 << a) | (1 << b)
            base = K.induced_mask(vm & ~ab)
            expected = sorted([f | (1 << a) for f in base.facets] + [f | (1 << b) for f in base.facets])
            if tuple(expected) == K.facets:
                return a, b
    return None


def classify_vertex_link(K: SimplicialComplex, E: SimplicialComplex) -> int | None:
    """Smallest vertex ``v`` with lk_v K = E, if any."""
    G = K.graph
    w = E.vertex_mask
    for v in K.vertices:
        if G.adj[v] == w and K.link_mask(1 << v).facets == E.facets:
            return v
    return None


def _components(G: Graph, mask: int) -> int:
    count = 0
    rest = mask
    while rest:
        count += 1
        frontier = rest & -rest
        seen = frontier
        while frontier:
            nxt = 0
            for v in vertices_of(frontier):
                nxt |= G.adj[v]
            frontier = nxt & mask & ~seen
            seen |= frontier
        rest &= ~seen
    return count


def induced_cycles(G: Graph, min_len: int = 4, budget: int | None = None) -> tuple[list[tuple[int, ...]], bool, int]:
    """Chordless cycles of length ≥ ``min_len``, each rooted at its smallest vertex.

    Returns ``(cycles, truncated, steps)``; ``steps`` counts DFS extensions.
    """
    adj = G.adj
    out: list[tuple[int, ...]] = []
    steps = 0
    truncated = False

    def extend(path: list[int], pmask: int, blocked: int, allowed: int) -> None:
        nonlocal steps, truncated
        last = path[-1]
        root = path[0]
        for x in vertices_of(adj[last] & allowed & ~pmask & ~blocked):
            steps += 1
            if budget is not None and steps > budget:
                truncated = True
                return
            if adj[root] >> x & 1:
                if len(path) + 1 >= min_len and path[1] < x:
                    out.append(tuple(path) + (x,))
                continue
            # interior vertices must have no neighbour on the rest of the cycle
            extend(path + [x], pmask | (1 << x), blocked | adj[last], allowed)
            if truncated:
                return

    for r in G.vertices:
        allowed = G.vertex_mask & ~((1 << (r + 1)) - 1)
        for p1 in vertices_of(adj[r] & allowed):
            # p1 may touch the root; later vertices may not touch p1's predecessors
            extend([r, p1], (1 << r) | (1 << p1), 0, allowed)
            if truncated:
                return out, True, steps
    return out, truncated, steps


def _record(K: SimplicialComplex, w: int, E: SimplicialComplex) -> EquatorRecord:
    return EquatorRecord(vertices_of(w), E, classify_vertex_link(K, E), gamma_polynomial(E))


def enumerate_equators(
    K: SimplicialComplex, p: int = 2, subset_budget: int = DEFAULT_SUBSET_BUDGET
) -> EquatorEnumeration:
    """All vertex sets W for which K[W] is a homology sphere of dimension dim K − 1.

    Two-dimensional complexes are handled by enumerating chordless cycles;
    otherwise vertex subsets are scanned by increasing size with necessary
    conditions checked before the homology certificate: every vertex of W has
    enough neighbours inside W to carry a sphere link, and V∖W induces exactly two connected
    components.
    """
    target = K.dim - 1
    G = K.graph
    found: list[EquatorRecord] = []
    if K.dim == 2:
        cycles, truncated, steps = induced_cycles(G, 4, subset_budget)
        for c in cycles:
            w = mask_of(c)
            E = K.induced_mask(w)
            if E.dim == 1 and is_homology_sphere(E, p, max_failures=1).is_sphere:
                found.append(_record(K, w, E))
        found.sort(key=lambda r: r.W)
        return EquatorEnumeration(found, truncated, steps, subset_budget, "induced-cycles")

    verts = K.vertices
    n = len(verts)
    vm = K.vertex_mask
    examined = 0
    truncated = False
    # a vertex of a homology k-sphere (k ≥ 1) has a link on at least k+1 vertices
    need = target + 1 if target >= 1 else 0
    for size in range(max(target + 2, 0), n - 1):
        for combo in combinations(verts, size):
            examined += 1
            if examined > subset_budget:
                truncated = True
                break
            w = 0
            for v in combo:
                w |= 1 << v
            if any((G.adj[v] & w).bit_count() < need for v in combo):
                continue
            if _components(G, vm & ~w) != 2:
                continue
            E = K.induced_mask(w)
            if E.dim != target or not E.is_pure:
                continue
            if is_homology_sphere(E, p, max_failures=1).is_sphere:
                found.append(_record(K, w, E))
        if truncated:
            break
    found.sort(key=lambda r: r.W)
    return EquatorEnumeration(found, truncated, examined, subset_budget, "subsets")


def equators_by_subsets(K: SimplicialComplex, p: int = 2) -> list[tuple[int, ...]]:
    """Brute force over every vertex subset; the reference for :func:`enumerate_equators`."""
    verts = K.vertices
    target = K.dim - 1
    out = []
    for size in range(len(verts) + 1):
        for combo in combinations(verts, size):
            E = K.induced_mask(mask_of(combo))
            if E.dim == target and is_homology_sphere(E, p, max_failures=1).is_sphere:
                out.append(combo)
    return sorted(out)


@dataclass
class BallDecomposition:
    B1: SimplicialComplex
    B2: SimplicialComplex
    E: SimplicialComplex
    W: tuple[int, ...]
    interior1: tuple[int, ...]
    interior2: tuple[int, ...]
    certified: bool | None = None

    def to_json(self) -> dict:
        return {
            "W": list(self.W),
            "interior1": list(self.interior1),
            "interior2": list(self.interior2),
            "certified": self.certified,
        }


def ball_decomposition(K: SimplicialComplex, W, p: int = 2, certify: bool = True) -> BallDecomposition:
    """Split K along the equator K[W] into the two sides of its facet adjacency graph."""
    w = W if isinstance(W, int) else mask_of(W)
    E = K.induced_mask(w)
    facets = K.facets
    parent = list(range(len(facets)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_ridge: dict[int, int] = {}
    for i, f in enumerate(facets):
        for v in vertices_of(f):
            r = f & ~(1 << v)
            if r & ~w == 0:
                continue
            j = by_ridge.setdefault(r, i)
            if j != i:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(len(facets)):
        groups.setdefault(find(i), []).append(facets[i])
    if len(groups) != 2:
        raise ComplexError(f"equator {vertices_of(w)} splits the facets into {len(groups)} parts, expected 2")
    g1, g2 = sorted(groups.values())
    B1, B2 = SimplicialComplex(tuple(g1)), SimplicialComplex(tuple(g2))
    dec = BallDecomposition(
        B1, B2, E, vertices_of(w),
        vertices_of(B1.vertex_mask & ~w), vertices_of(B2.vertex_mask & ~w),
    )
    if certify:
        ok = True
        for B in (B1, B2):
            cert = is_homology_ball(B, p)
            ok = ok and cert.is_ball and cert.boundary.facets == E.facets
        dec.certified = ok
    return dec


def _cone_sides(K: SimplicialComplex, dec: BallDecomposition) -> tuple[SimplicialComplex, SimplicialComplex]:
    v1 = K.next_free_vertex()
    v2 = v1 + 1
    D1 = SimplicialComplex.from_masks(list(dec.B1.facets) + [f | (1 << v1) for f in dec.E.facets])
    D2 = SimplicialComplex.from_masks(list(dec.B2.facets) + [f | (1 << v2) for f in dec.E.facets])
    return D1, D2


def gamma_decomposition_check(K: SimplicialComplex, W, p: int = 2) -> Report:
    """γ_K = γ_{K1} + γ_{K2} − γ_E where K_i = B_i ∪ (E ∗ v_i)."""
    dec = ball_decomposition(K, W, p)
    D1, D2 = _cone_sides(K, dec)
    E = dec.E
    certs = [is_homology_sphere(D, p).is_sphere for D in (D1, D2)]
    g, g1, g2, gE = (gamma_polynomial(X) for X in (K, D1, D2, E))
    fE = f_polynomial(E)
    f_susp = fE + fE.shift(1) * 2
    f_ok = f_polynomial(K) == f_polynomial(D1) + f_polynomial(D2) - f_susp
    g_ok = g == g1 + g2 - gE
    details = {
        "W": dec.W,
        "gamma": g,
        "gamma_1": g1,
        "gamma_2": g2,
        "gamma_E": gE,
        "f_identity": f_ok,
        "sides_certified_spheres": certs,
        "balls_certified": dec.certified,
        "interior_counts": [len(dec.interior1), len(dec.interior2)],
    }
    link_of = classify_vertex_link(K, E)
    link_ok = True
    if link_of is not None:
        susp = suspension(E)
        # one side is the cone over the link, the other is K itself up to relabeling
        link_ok = any(
            is_isomorphic(a, susp) and is_isomorphic(b, K) for a, b in ((D1, D2), (D2, D1))
        )
        details["vertex_link_of"] = link_of
        details["vertex_link_sides_ok"] = link_ok
    ok = g_ok and f_ok and all(certs) and bool(dec.certified) and link_ok
    return Report(
        check="eq3-decomposition",
        verdict=verdict_of(ok),
        details=details,
        witnesses={} if ok else {"W": dec.W, "lhs": g, "rhs": g1 + g2 - gE},
        parameters={"p": p},
    )


def link_conjecture_check(K: SimplicialComplex) -> Report:
    g = gamma_polynomial(K)
    per_vertex = {}
    violations = []
    for v in K.vertices:
        gl = gamma_polynomial(K.link_mask(1 << v))
        per_vertex[v] = gl
        if not poly_leq(gl, g):
            violations.append({"vertex": v, "gamma_link": gl})
    return Report(
        check="link",
        verdict=verdict_of(not violations),
        witnesses={"violations": violations} if violations else {},
        details={"gamma": g, "gamma_links": per_vertex},
        notes=[] if violations else ["no counterexample found"],
    )


def equator_conjecture_check(K: SimplicialComplex, p: int = 2, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> Report:
    g = gamma_polynomial(K)
    enum = enumerate_equators(K, p, subset_budget)
    violations = [r for r in enum if not poly_leq(r.gamma_E, g)]
    if violations:
        verdict = FAIL
    elif enum.truncated:
        verdict = TRUNCATED
    else:
        verdict = PASS
    return Report(
        check="equator",
        verdict=verdict,
        witnesses={"violations": violations} if violations else ({"limit": subset_budget} if enum.truncated else {}),
        details={"gamma": g, "equators": len(enum), "method": enum.method, "examined": enum.examined},
        parameters={"p": p, "subset_budget": subset_budget},
        notes=[] if violations else ["no counterexample found within limits"],
    )


@dataclass
class StructureVerdict:
    alt0: tuple[int, int] | None
    alt1: list[tuple[int, int]]
    alt2: dict[int, tuple[int, ...] | None]
    fast_path: dict | None = None
    truncated: bool = False

    @property
    def alt2_holds(self) -> bool:
        return bool(self.alt2) and all(w is not None for w in self.alt2.values())

    @property
    def holds(self) -> bool:
        return self.alt0 is not None or bool(self.alt1) or self.alt2_holds

    def to_json(self) -> dict:
        return {
            "alt0_suspension": self.alt0,
            "alt1_c4_free_edges": self.alt1,
            "alt2_witnesses": {str(v): w for v, w in self.alt2.items()},
            "fast_path": self.fast_path,
            "truncated": self.truncated,
            "holds": self.holds,
        }


def _few_nonneighbours(K: SimplicialComplex) -> dict | None:
    """A vertex non-adjacent to at most two others, with the clause it forces."""
    G = K.graph
    vm = K.vertex_mask
    for v in K.vertices:
        non = vertices_of(vm & ~G.adj[v] & ~(1 << v))
        if len(non) <= 2:
            if len(non) == 0:
                clause = "cone"
            elif len(non) == 1:
                clause = "alt0"
            else:
                clause = "alt1"
            return {"vertex": v, "non_neighbours": non, "clause": clause}
    return None


def _non_link_witnesses(K: SimplicialComplex, equators: list[EquatorRecord]) -> dict[int, tuple[int, ...] | None]:
    non_links = [r for r in equators if r.is_vertex_link is None]
    out = {}
    for v in K.vertices:
        out[v] = next((r.W for r in non_links if not r.mask >> v & 1), None)
    return out


def structure_check(K: SimplicialComplex, p: int = 2, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> StructureVerdict:
    enum = enumerate_equators(K, p, subset_budget)
    return StructureVerdict(
        alt0=is_suspension(K),
        alt1=c4_free_edges(K),
        alt2=_non_link_witnesses(K, enum.equators),
        fast_path=_few_nonneighbours(K),
        truncated=enum.truncated,
    )


def structure_report(K: SimplicialComplex, p: int = 2, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> Report:
    sv = structure_check(K, p, subset_budget)
    fp = sv.fast_path
    consistent = True
    if fp is not None:
        consistent = {"alt0": sv.alt0 is not None, "alt1": bool(sv.alt1), "cone": False}[fp["clause"]]
    if sv.holds and consistent:
        verdict = PASS
    elif sv.truncated and consistent:
        verdict = TRUNCATED
    else:
        verdict = FAIL
    return Report(
        check="structure",
        verdict=verdict,
        details=sv.to_json(),
        witnesses={} if verdict != FAIL else {"structure": sv.to_json()},
        parameters={"p": p, "subset_budget": subset_budget},
    )


def dim2_structure_check(K: SimplicialComplex, p: int = 2) -> Report:
    """For every vertex v: some vertex has at most two non-neighbours, or some
    equator that is not a vertex link avoids v."""
    if K.dim != 2:
        raise ComplexError(f"dimension-two check called on a complex of dimension {K.dim}")
    clause_i = _few_nonneighbours(K)
    enum = enumerate_equators(K, p)
    witnesses = _non_link_witnesses(K, enum.equators)
    per_vertex = {v: {"clause_i": clause_i is not None, "equator": w} for v, w in witnesses.items()}
    failing = [v for v, row in per_vertex.items() if not row["clause_i"] and row["equator"] is None]
    return Report(
        check="dim2",
        verdict=verdict_of(not failing and not enum.truncated),
        details={"clause_i": clause_i, "per_vertex": per_vertex},
        witnesses={"failing_vertices": failing} if failing else {},
        parameters={"p": p},
    )
