"""Immutable simplicial complexes.

Faces are packed into Python integers used as vertex bitmasks: bit ``v`` is set
iff vertex ``v`` belongs to the face.  A complex is stored by its facets (the
inclusion-maximal faces); every other face is derived on demand and memoized.

Subcomplexes (links, stars, induced subcomplexes, ...) keep the vertex ids of
their ambient complex, so faces of a link can be compared directly with faces
of the complex it came from.  ``compact`` relabels to a dense ``0..n-1`` range.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

VERTEX_CAP = 128


class ComplexError(ValueError):
    """Raised for malformed complexes or invalid arguments to a construction."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if v < 0:
            raise ComplexError(f"negative vertex id {v}")
        if v >= VERTEX_CAP:
            raise ComplexError(f"vertex id {v} exceeds vertex cap {VERTEX_CAP}")
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def submasks(mask: int):
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def maximal_masks(masks: Iterable[int]) -> tuple[int, ...]:
    uniq = sorted(set(masks), key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        for k in kept:
            if m & k == m:
                break
        else:
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[v]`` is the neighbourhood bitmask of ``v``."""

    vertex_mask: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        vmask = mask_of(vertices)
        edges = list(edges)
        for u, v in edges:
            vmask |= (1 << u) | (1 << v)
        adj = [0] * vmask.bit_length()
        for u, v in edges:
            if u == v:
                raise ComplexError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(vmask, tuple(adj))

    def neighbors(self, v: int) -> int:
        return self.adj[v] if v < len(self.adj) else 0

    @property
    def vertices(self) -> tuple[int, ...]:
        return vertices_of(self.vertex_mask)

    @property
    def n(self) -> int:
        return self.vertex_mask.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.neighbors(u) >> v & 1)

    def degree(self, v: int) -> int:
        return self.neighbors(v).bit_count()

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in vertices_of(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(self.neighbors(v).bit_count() for v in self.vertices) // 2

    def complement(self) -> "Graph":
        vm = self.vertex_mask
        adj = [0] * len(self.adj)
        for v in self.vertices:
            adj[v] = vm & ~self.adj[v] & ~(1 << v)
        return Graph(vm, tuple(adj))

    def induced(self, w: int) -> "Graph":
        w &= self.vertex_mask
        adj = [0] * len(self.adj)
        for v in vertices_of(w):
            adj[v] = self.adj[v] & w
        return Graph(w, tuple(adj))


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite simplicial complex given by its facets (as vertex bitmasks).

    The empty complex ``{∅}`` has the single facet ``0``.  ``labels`` is an
    optional side table mapping vertex ids to external labels (from files).
    """

    facets: tuple[int, ...]
    labels: tuple[Hashable, ...] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_masks(cls, masks: Iterable[int], labels=None) -> "SimplicialComplex":
        masks = list(masks)
        if not masks:
            raise ComplexError("empty complex")
        for m in masks:
            if m < 0 or m.bit_length() > VERTEX_CAP:
                raise ComplexError(f"vertex id exceeds vertex cap {VERTEX_CAP}")
        return cls(maximal_masks(masks), labels)

    @cached_property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    @property
    def vertices(self) -> tuple[int, ...]:
        return vertices_of(self.vertex_mask)

    @property
    def n(self) -> int:
        return self.vertex_mask.bit_count()

    @cached_property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        k = self.facets[0].bit_count()
        return all(f.bit_count() == k for f in self.facets)

    def next_free_vertex(self) -> int:
        v = self.vertex_mask.bit_length()
        if v >= VERTEX_CAP:
            raise ComplexError(f"vertex cap {VERTEX_CAP} reached")
        return v

    @cached_property
    def faces_by_size(self) -> dict[int, frozenset[int]]:
        """Faces grouped by cardinality (size ``k`` ⇔ dimension ``k-1``)."""
        seen: set[int] = set()
        for f in self.facets:
            if f in seen:
                continue
            seen.update(submasks(f))
        groups: dict[int, set[int]] = {}
        for s in seen:
            groups.setdefault(s.bit_count(), set()).add(s)
        return {k: frozenset(v) for k, v in sorted(groups.items())}

    def faces(self, dim: int) -> frozenset[int]:
        return self.faces_by_size.get(dim + 1, frozenset())

    @cached_property
    def all_faces(self) -> frozenset[int]:
        out: set[int] = set()
        for group in self.faces_by_size.values():
            out |= group
        return frozenset(out)

    @property
    def num_faces(self) -> int:
        return sum(len(g) for g in self.faces_by_size.values())

    def has_face(self, mask: int) -> bool:
        for f in self.facets:
            if mask & f == mask:
                return True
        return False

    @cached_property
    def graph(self) -> Graph:
        vm = self.vertex_mask
        adj = [0] * vm.bit_length()
        for f in self.facets:
            for v in vertices_of(f):
                adj[v] |= f
        for v in vertices_of(vm):
            adj[v] &= ~(1 << v)
        return Graph(vm, tuple(adj))

    # -- mask-level constructions -------------------------------------------------

    def link_mask(self, sigma: int) -> "SimplicialComplex":
        fs = [f & ~sigma for f in self.facets if f & sigma == sigma]
        if not fs:
            raise ComplexError(f"not a face: {vertices_of(sigma)}")
        return SimplicialComplex(tuple(sorted(fs)))

    def star_mask(self, sigma: int) -> "SimplicialComplex":
        fs = [f for f in self.facets if f & sigma == sigma]
        if not fs:
            raise ComplexError(f"not a face: {vertices_of(sigma)}")
        return SimplicialComplex(tuple(fs))

    def antistar_mask(self, sigma: int) -> "SimplicialComplex":
        if not self.has_face(sigma):
            raise ComplexError(f"not a face: {vertices_of(sigma)}")
        if sigma == 0:
            # every face contains ∅: the antistar of ∅ has no faces at all
            raise ComplexError("antistar of the empty face is the void complex")
        out = []
        for f in self.facets:
            if f & sigma != sigma:
                out.append(f)
            else:
                out.extend(f & ~(1 << x) for x in vertices_of(sigma))
        return SimplicialComplex.from_masks(out)

    def induced_mask(self, w: int) -> "SimplicialComplex":
        return SimplicialComplex(maximal_masks(f & w for f in self.facets))

    def relabel(self, mapping: dict[int, int]) -> "SimplicialComplex":
        out = []
        for f in self.facets:
            m = 0
            for v in vertices_of(f):
                m |= 1 << mapping[v]
            out.append(m)
        return SimplicialComplex.from_masks(out)

    def compact(self) -> tuple["SimplicialComplex", tuple[int, ...]]:
        """Dense relabeling; returns the relabeled complex and the old ids by new id."""
        old = self.vertices
        return self.relabel({v: i for i, v in enumerate(old)}), old

    def face_tuples(self) -> list[tuple[int, ...]]:
        return [vertices_of(f) for f in self.facets]

    def label(self, v: int) -> Hashable:
        return self.labels[v] if self.labels is not None else v

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, n={self.n}, facets={self.face_tuples()})"


# -- public operations ---------------------------------------------------------


def _label_key(label):
    return (0, label, "") if isinstance(label, int) else (1, 0, str(label))


def from_facets(faces: Sequence[Iterable[Hashable]]) -> SimplicialComplex:
    """Build a complex from a list of faces, keeping only the maximal ones.

    Vertex labels are compacted to ``0..n-1`` in sorted label order (integers
    before strings); the original labels are kept in ``labels`` unless they
    already are ``0..n-1``.
    """
    faces = [list(f) for f in faces]
    if not faces:
        raise ComplexError("empty complex")
    for face in faces:
        if len(set(face)) != len(face):
            raise ComplexError(f"repeated vertex in face {face}")
        for x in face:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise ComplexError(f"bad vertex label {x!r}")
            if isinstance(x, int) and x < 0:
                raise ComplexError(f"negative vertex id {x}")
    labels = sorted({x for f in faces for x in f}, key=_label_key)
    if len(labels) > VERTEX_CAP:
        raise ComplexError(f"{len(labels)} vertices exceed vertex cap {VERTEX_CAP}")
    index = {x: i for i, x in enumerate(labels)}
    masks = [mask_of(index[x] for x in f) for f in faces]
    side = None if labels == list(range(len(labels))) else tuple(labels)
    return SimplicialComplex.from_masks(masks, side)


def one_skeleton(K: SimplicialComplex) -> Graph:
    return K.graph


def maximal_cliques(G: Graph) -> list[int]:
    """Bron–Kerbosch with pivoting over bitmask neighbourhoods."""
    adj = G.adj
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        px = p | x
        pivot = max(vertices_of(px), key=lambda w: (p & adj[w]).bit_count())
        for v in vertices_of(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, G.vertex_mask, 0)
    return out


def clique_complex(G: Graph) -> SimplicialComplex:
    return SimplicialComplex(tuple(sorted(maximal_cliques(G))))


def is_flag(K: SimplicialComplex) -> bool:
    return clique_complex(K.graph).facets == K.facets


def is_pure(K: SimplicialComplex) -> bool:
    return K.is_pure


def link(K: SimplicialComplex, face: Iterable[int] = ()) -> SimplicialComplex:
    return K.link_mask(mask_of(face))


def star(K: SimplicialComplex, face: Iterable[int] = ()) -> SimplicialComplex:
    return K.star_mask(mask_of(face))


def antistar(K: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    return K.antistar_mask(mask_of(face))


def induced(K: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    return K.induced_mask(mask_of(vertices))


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join; ``K2`` is shifted past the vertices of ``K1`` when they overlap."""
    if K1.vertex_mask & K2.vertex_mask:
        shift = K1.vertex_mask.bit_length()
        if shift + K2.vertex_mask.bit_length() > VERTEX_CAP:
            raise ComplexError(f"join exceeds vertex cap {VERTEX_CAP}")
        K2 = SimplicialComplex(tuple(f << shift for f in K2.facets))
    return SimplicialComplex.from_masks(a | b for a in K1.facets for b in K2.facets)


def cone(K: SimplicialComplex, v: int | None = None) -> SimplicialComplex:
    v = K.next_free_vertex() if v is None else v
    if K.vertex_mask >> v & 1:
        raise ComplexError(f"cone vertex {v} already in complex")
    return join(K, SimplicialComplex((mask_of([v]),)))


def suspension(K: SimplicialComplex, a: int | None = None, b: int | None = None) -> SimplicialComplex:
    a = K.next_free_vertex() if a is None else a
    b = a + 1 if b is None else b
    if a == b or (K.vertex_mask >> a & 1) or (K.vertex_mask >> b & 1):
        raise ComplexError("suspension apexes must be distinct new vertices")
    return join(K, SimplicialComplex(tuple(sorted((mask_of([a]), mask_of([b]))))))


def octahedral_sphere(d: int) -> SimplicialComplex:
    """Boundary of the ``d``-crosspolytope; vertices ``2i`` and ``2i+1`` are antipodal."""
    if d < 1:
        raise ComplexError("octahedral sphere needs d >= 1")
    if 2 * d > VERTEX_CAP:
        raise ComplexError(f"octahedral sphere of dimension {d} exceeds vertex cap")
    facets = []
    for choice in range(1 << d):
        facets.append(sum(1 << (2 * i + (choice >> i & 1)) for i in range(d)))
    return SimplicialComplex(tuple(sorted(facets)))


def is_octahedral(K: SimplicialComplex) -> bool:
    """True iff ``K`` is (isomorphic to) the boundary of a crosspolytope.

    The octahedral sphere is the clique complex of the cocktail-party graph:
    ``2d`` vertices, each non-adjacent to exactly one other vertex.
    """
    d = K.dim + 1
    if d < 1 or K.n != 2 * d:
        return False
    g = K.graph
    vm = g.vertex_mask
    for v in g.vertices:
        if (vm & ~g.adj[v] & ~(1 << v)).bit_count() != 1:
            return False
    return is_flag(K)


def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise ComplexError("cycle needs n >= 3")
    return SimplicialComplex.from_masks((1 << i) | (1 << ((i + 1) % n)) for i in range(n))
