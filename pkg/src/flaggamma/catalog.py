"""Named complexes and the standard catalog of flag homology spheres."""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex_core import SimplicialComplex, cycle, is_flag, join, octahedral_sphere, suspension, vertices_of
from .isomorphism import canonical_labeling
from .moves import generate_family_S, vertex_split
from .topology import is_homology_sphere


@dataclass
class CatalogEntry:
    name: str
    complex: SimplicialComplex
    provenance: dict = field(default_factory=dict)


def icosahedron() -> SimplicialComplex:
    """Boundary of the icosahedron: apex 0, upper ring 1..5, lower ring 6..10, apex 11."""
    up = [1 + i for i in range(5)]
    low = [6 + i for i in range(5)]
    tris = []
    for i in range(5):
        j = (i + 1) % 5
        tris += [(0, up[i], up[j]), (up[i], up[j], low[i]), (low[i], low[j], up[j]), (11, low[i], low[j])]
    return SimplicialComplex.from_masks(sum(1 << v for v in t) for t in tris)


def link_cycle(K: SimplicialComplex, u: int) -> list[int]:
    """Vertices of the (cyclic) link of ``u`` in cyclic order, from the smallest."""
    lk = K.link_mask(1 << u)
    adj: dict[int, list[int]] = {}
    for f in lk.facets:
        a, b = vertices_of(f)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj)
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    return order


def dim2_splits(K: SimplicialComplex):
    """Vertex splits of a flag 2-sphere giving both daughters degree ≥ 4."""
    for u in K.vertices:
        C = link_cycle(K, u)
        k = len(C)
        for i in range(k):
            for j in range(i + 2, k):
                A = C[i : j + 1]
                B = C[j:] + C[: i + 1]
                if len(A) >= 3 and len(B) >= 3:
                    yield u, A, B


def _plausible_2sphere(K: SimplicialComplex) -> bool:
    if K.dim != 2 or not K.is_pure:
        return False
    G = K.graph
    if any(G.degree(v) < 4 for v in K.vertices):
        return False
    count: dict[int, int] = {}
    for f in K.facets:
        for v in vertices_of(f):
            e = f & ~(1 << v)
            count[e] = count.get(e, 0) + 1
    return all(c == 2 for c in count.values())


def canonical_relabel(K: SimplicialComplex) -> tuple[tuple[int, ...], SimplicialComplex]:
    form, order = canonical_labeling(K)
    return form, K.relabel({v: i for i, v in enumerate(order)})


def flag_2_spheres(max_n: int, p: int = 2) -> dict[int, list[SimplicialComplex]]:
    """All flag 2-spheres with at most ``max_n`` vertices, up to isomorphism.

    Every flag 2-sphere other than the octahedron has an edge in no induced
    4-cycle, whose contraction is a smaller flag 2-sphere; so splitting
    vertices of the spheres on n vertices in every way reaches all spheres on
    n + 1 vertices.  Candidates are deduplicated by canonical form.
    """
    _, octa = canonical_relabel(octahedral_sphere(3))
    levels = {6: [octa]}
    for n in range(6, max_n):
        seen: set = set()
        nxt = []
        for K in levels[n]:
            for u, A, B in dim2_splits(K):
                L = vertex_split(K, u, A, B)
                if not _plausible_2sphere(L):
                    continue
                form, R = canonical_relabel(L)
                if form in seen:
                    continue
                seen.add(form)
                if is_flag(R) and is_homology_sphere(R, p, max_failures=1).is_sphere:
                    nxt.append(R)
        levels[n + 1] = nxt
    return {n: ks for n, ks in levels.items() if n <= max_n}


def family_S_entries(ds=(2, 3, 4), max_steps: int = 6, seeds=(0, 1)) -> list[CatalogEntry]:
    out = []
    for d in ds:
        for steps in range(1, max_steps + 1):
            for seed in seeds:
                K, script = generate_family_S(d, steps, seed)
                out.append(CatalogEntry(f"S-d{d}-s{steps}-seed{seed}", K, {"generator": "family_S", **script.to_json()}))
    return out


def standard_catalog(max_flag2: int = 10) -> list[CatalogEntry]:
    """Crosspolytopes, cycles, the icosahedron, suspensions and joins, family-S
    members and every flag 2-sphere up to ``max_flag2`` vertices."""
    out = [CatalogEntry(f"octahedral-{d}", octahedral_sphere(d), {"generator": "octahedral_sphere", "d": d})
           for d in range(1, 6)]
    out += [CatalogEntry(f"cycle-{n}", cycle(n), {"generator": "cycle", "n": n}) for n in range(4, 9)]
    ico = icosahedron()
    out += [
        CatalogEntry("icosahedron", ico, {"generator": "icosahedron"}),
        CatalogEntry("suspension-cycle-5", suspension(cycle(5)), {"generator": "suspension", "of": "cycle-5"}),
        CatalogEntry("suspension-icosahedron", suspension(ico), {"generator": "suspension", "of": "icosahedron"}),
        CatalogEntry("join-cycle-5-cycle-5", join(cycle(5), cycle(5)), {"generator": "join", "of": ["cycle-5", "cycle-5"]}),
        CatalogEntry("join-cycle-4-cycle-6", join(cycle(4), cycle(6)), {"generator": "join", "of": ["cycle-4", "cycle-6"]}),
    ]
    out += family_S_entries()
    for n, ks in flag_2_spheres(max_flag2).items():
        for i, K in enumerate(ks):
            out.append(CatalogEntry(f"flag2-n{n}-{i:03d}", K, {"generator": "flag_2_spheres", "n": n, "index": i}))
    return out
