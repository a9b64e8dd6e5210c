"""Edge contractions, vertex splits, stellar edge subdivisions and the family
of crosspolytope subdivisions, with the γ-identities they satisfy."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .complex_core import (
    ComplexError,
    Graph,
    SimplicialComplex,
    clique_complex,
    is_octahedral,
    mask_of,
    octahedral_sphere,
    suspension,
    vertices_of,
)
from .report import Report, verdict_of
from .vectors import gamma_polynomial

Edge = tuple[int, int]


class InadmissibleContraction(ComplexError):
    pass


def _edge(K: SimplicialComplex, e) -> Edge:
    u, v = sorted(e)
    if u == v or not K.graph.has_edge(u, v):
        raise ComplexError(f"not an edge: {tuple(e)}")
    return u, v


def edges(K: SimplicialComplex) -> list[Edge]:
    return K.graph.edges


def induced_c4_through(G: Graph, u: int, v: int) -> tuple[int, int] | None:
    """A pair ``(x, y)`` with u–v–x–y–u an induced 4-cycle, or None.

    Needs x ~ v, y ~ u, x ~ y and the diagonals u ≁ x, v ≁ y.
    """
    adj = G.adj
    only_v = adj[v] & ~adj[u] & ~(1 << u)
    only_u = adj[u] & ~adj[v] & ~(1 << v)
    for x in vertices_of(only_v):
        hit = adj[x] & only_u
        if hit:
            return x, vertices_of(hit)[0]
    return None


def edge_in_induced_c4(K: SimplicialComplex, e) -> bool:
    u, v = _edge(K, e)
    return induced_c4_through(K.graph, u, v) is not None


def c4_free_edges(K: SimplicialComplex) -> list[Edge]:
    G = K.graph
    return [(u, v) for u, v in G.edges if induced_c4_through(G, u, v) is None]


def contract_edge(K: SimplicialComplex, e) -> SimplicialComplex:
    """Identify the endpoints of ``e = uv``: every face containing ``v`` has ``v``
    replaced by ``u`` (the smaller endpoint survives)."""
    u, v = _edge(K, e)
    vb, ub = 1 << v, 1 << u
    return SimplicialComplex.from_masks((f & ~vb) | ub if f & vb else f for f in K.facets)


def contract_edge_onto(K: SimplicialComplex, keep: int, drop: int) -> SimplicialComplex:
    """As :func:`contract_edge`, choosing which endpoint survives."""
    _edge(K, (keep, drop))
    db, kb = 1 << drop, 1 << keep
    return SimplicialComplex.from_masks((f & ~db) | kb if f & db else f for f in K.facets)


def stellar_subdivide_edge(K: SimplicialComplex, e, new_vertex: int | None = None) -> SimplicialComplex:
    """Replace the star of ``e`` by the cone from a new vertex over ∂e ∗ lk e."""
    u, v = _edge(K, e)
    w = K.next_free_vertex() if new_vertex is None else new_vertex
    if K.vertex_mask >> w & 1:
        raise ComplexError(f"vertex {w} already present")
    eb, ub, vb, wb = (1 << u) | (1 << v), 1 << u, 1 << v, 1 << w
    out = []
    for f in K.facets:
        if f & eb == eb:
            out.append((f & ~ub) | wb)
            out.append((f & ~vb) | wb)
        else:
            out.append(f)
    return SimplicialComplex.from_masks(out)


def vertex_split(K: SimplicialComplex, u: int, A, B, new_vertex: int | None = None) -> SimplicialComplex:
    """Split ``u`` into ``u`` (adjacent to ``A``) and a new vertex (adjacent to ``B``).

    Returns the clique complex of the modified graph.  Whether the result is a
    flag homology sphere is not guaranteed; callers certify it.
    """
    G = K.graph
    a, b = mask_of(A), mask_of(B)
    if (a | b) != G.neighbors(u):
        raise ComplexError("A ∪ B must equal the neighbourhood of u")
    w = K.next_free_vertex() if new_vertex is None else new_vertex
    size = max(len(G.adj), w + 1)
    adj = list(G.adj) + [0] * (size - len(G.adj))
    ub, wb = 1 << u, 1 << w
    for x in vertices_of(G.neighbors(u) & ~a):
        adj[x] &= ~ub
    for x in vertices_of(b):
        adj[x] |= wb
    adj[u] = a | wb
    adj[w] = b | ub
    return clique_complex(Graph(G.vertex_mask | wb, tuple(adj)))


@dataclass
class SubdivisionScript:
    """Replayable record of successive edge subdivisions of a crosspolytope."""

    d: int
    steps: list[Edge] = field(default_factory=list)
    seed: int | None = None

    def replay(self) -> SimplicialComplex:
        K = octahedral_sphere(self.d)
        for e in self.steps:
            K = stellar_subdivide_edge(K, e)
        return K

    def to_json(self) -> dict:
        return {"d": self.d, "seed": self.seed, "steps": [list(e) for e in self.steps]}

    @classmethod
    def from_json(cls, doc: dict) -> "SubdivisionScript":
        return cls(int(doc["d"]), [tuple(sorted(map(int, e))) for e in doc["steps"]], doc.get("seed"))

    def suspended(self) -> "SubdivisionScript":
        """Script for the suspension: replaying it on the ``d+1`` crosspolytope
        gives a complex isomorphic to the suspension of ``replay()``."""
        top = 2 * self.d

        def shift(x: int) -> int:
            return x + 2 if x >= top else x

        return SubdivisionScript(self.d + 1, [(shift(a), shift(b)) for a, b in self.steps], self.seed)


def generate_family_S(d: int, steps: int, seed: int | None = None) -> tuple[SimplicialComplex, SubdivisionScript]:
    """Start at the boundary of the ``d``-crosspolytope and subdivide ``steps``
    uniformly random edges."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    rng = random.Random(seed)
    K = octahedral_sphere(d)
    script = SubdivisionScript(d, [], seed)
    for _ in range(steps):
        e = rng.choice(K.graph.edges)
        K = stellar_subdivide_edge(K, e)
        script.steps.append(e)
    return K, script


def is_minimal_R(K: SimplicialComplex) -> bool:
    return not c4_free_edges(K) and not is_octahedral(K)


def contraction_gamma_check(K: SimplicialComplex, e) -> Report:
    """γ_K = γ_{K/e} + t·γ_{lk_e K} for an edge in no induced 4-cycle."""
    u, v = _edge(K, e)
    witness = induced_c4_through(K.graph, u, v)
    if witness is not None:
        raise InadmissibleContraction(f"contraction not admissible: {u}-{v}-{witness[0]}-{witness[1]} is an induced 4-cycle")
    lhs = gamma_polynomial(K)
    contracted = gamma_polynomial(contract_edge(K, (u, v)))
    lk = gamma_polynomial(K.link_mask((1 << u) | (1 << v)))
    rhs = contracted + lk.shift(1)
    return Report(
        check="contraction-id",
        verdict=verdict_of(lhs == rhs),
        details={"edge": [u, v], "gamma": lhs, "gamma_contracted": contracted, "gamma_edge_link": lk},
        witnesses={} if lhs == rhs else {"edge": [u, v], "lhs": lhs, "rhs": rhs},
    )


def suspension_gamma_check(K: SimplicialComplex) -> Report:
    g = gamma_polynomial(K)
    gs = gamma_polynomial(suspension(K))
    return Report(
        check="suspension-id",
        verdict=verdict_of(g == gs),
        details={"gamma": g, "gamma_suspension": gs},
        witnesses={} if g == gs else {"gamma": g, "gamma_suspension": gs},
    )
