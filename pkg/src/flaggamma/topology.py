"""Reduced homology over GF(p) and homology sphere / ball certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex_core import ComplexError, SimplicialComplex, maximal_masks, vertices_of

DEFAULT_FACE_CAP = 200_000
SPHERE, BALL, NEITHER = "sphere", "ball", "neither"


class FaceCapExceeded(ComplexError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers b̃_{-1}, ..., b̃_{dim}; ``values[0]`` is b̃_{-1}."""

    values: tuple[int, ...]
    p: int = 2

    def __getitem__(self, i: int) -> int:
        j = i + 1
        return self.values[j] if 0 <= j < len(self.values) else 0

    @property
    def is_acyclic(self) -> bool:
        return not any(self.values)

    def to_json(self) -> dict:
        return {"p": self.p, "reduced_betti_from_minus_1": list(self.values)}


def _rank_gf2(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


def _rank_gfp(rows: list[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            top = max(r)
            piv = pivots.get(top)
            if piv is None:
                inv = pow(r[top], p - 2, p)
                pivots[top] = {c: v * inv % p for c, v in r.items()}
                rank += 1
                break
            factor = r[top]
            for c, v in piv.items():
                nv = (r.get(c, 0) - factor * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


def boundary_rank(K: SimplicialComplex, size: int, p: int = 2) -> int:
    """Rank of the boundary map from faces of ``size`` vertices to faces of ``size-1``."""
    if size <= 0:
        return 0
    upper = K.faces_by_size.get(size, ())
    if not upper:
        return 0
    lower = {f: i for i, f in enumerate(sorted(K.faces_by_size.get(size - 1, ())))}
    if p == 2:
        rows = []
        for f in upper:
            r = 0
            for v in vertices_of(f):
                r |= 1 << lower[f & ~(1 << v)]
            rows.append(r)
        return _rank_gf2(rows)
    rows_p = []
    for f in upper:
        row = {}
        for j, v in enumerate(vertices_of(f)):
            row[lower[f & ~(1 << v)]] = -1 if j % 2 else 1
        rows_p.append(row)
    return _rank_gfp(rows_p, p)


def betti_mod_p(K: SimplicialComplex, p: int = 2, face_cap: int = DEFAULT_FACE_CAP) -> BettiVector:
    if not _is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    total = K.num_faces
    if total > face_cap:
        raise FaceCapExceeded(f"{total} faces exceed face cap {face_cap}")
    top = K.dim + 1
    ranks = [boundary_rank(K, s, p) for s in range(top + 2)]
    values = []
    for s in range(top + 1):
        c = len(K.faces_by_size.get(s, ()))
        values.append(c - ranks[s] - ranks[s + 1])
    return BettiVector(tuple(values), p)


def _sphere_condition(b: BettiVector, target: int) -> bool:
    return b[target] == 1 and all(b[i] == 0 for i in range(-1, target))


@dataclass
class SphereCertificate:
    verdict: str
    p: int
    dim: int
    failures: list[tuple[tuple[int, ...], BettiVector]] = field(default_factory=list)
    boundary: SimplicialComplex | None = None
    reasons: list[str] = field(default_factory=list)

    @property
    def is_sphere(self) -> bool:
        return self.verdict == SPHERE

    @property
    def is_ball(self) -> bool:
        return self.verdict == BALL

    def to_json(self, failure_cap: int = 10) -> dict:
        out = {
            "verdict": self.verdict,
            "p": self.p,
            "dim": self.dim,
            "failures": [{"face": list(f), "betti": b.to_json()} for f, b in self.failures[:failure_cap]],
            "failures_total": len(self.failures),
            "reasons": list(self.reasons),
        }
        if self.boundary is not None:
            out["boundary_facets"] = self.boundary.face_tuples()
        return out


class _LinkBettiCache:
    """Betti vectors of links keyed by their order-preserving compaction."""

    def __init__(self, p: int, face_cap: int):
        self.p = p
        self.face_cap = face_cap
        self.table: dict[tuple[int, ...], BettiVector] = {}

    def __call__(self, lk: SimplicialComplex) -> BettiVector:
        index = {v: i for i, v in enumerate(lk.vertices)}
        key = tuple(sorted(sum(1 << index[v] for v in vertices_of(f)) for f in lk.facets))
        b = self.table.get(key)
        if b is None:
            b = betti_mod_p(lk, self.p, self.face_cap)
            self.table[key] = b
        return b


def is_homology_sphere(
    K: SimplicialComplex,
    p: int = 2,
    face_cap: int = DEFAULT_FACE_CAP,
    max_failures: int | None = None,
) -> SphereCertificate:
    """Check H̃_i(lk σ) = 0 for i < dim K − |σ| and = F at i = dim K − |σ|, for all σ.

    With ``max_failures`` set, stops after that many failing faces.
    """
    dim = K.dim
    betti = _LinkBettiCache(p, face_cap)
    failures = []
    if K.num_faces > face_cap:
        raise FaceCapExceeded(f"{K.num_faces} faces exceed face cap {face_cap}")
    # cheapest faces first so non-spheres fail fast
    for size in sorted(K.faces_by_size, reverse=True):
        for sigma in sorted(K.faces_by_size[size]):
            b = betti(K.link_mask(sigma))
            if not _sphere_condition(b, dim - size):
                failures.append((vertices_of(sigma), b))
                if max_failures is not None and len(failures) >= max_failures:
                    return SphereCertificate(NEITHER, p, dim, failures)
    return SphereCertificate(NEITHER if failures else SPHERE, p, dim, failures)


def is_homology_ball(K: SimplicialComplex, p: int = 2, face_cap: int = DEFAULT_FACE_CAP) -> SphereCertificate:
    if not K.is_pure:
        raise ComplexError("homology ball check needs a pure complex")
    dim = K.dim
    betti = _LinkBettiCache(p, face_cap)
    if K.num_faces > face_cap:
        raise FaceCapExceeded(f"{K.num_faces} faces exceed face cap {face_cap}")
    failures = []
    acyclic: list[int] = []
    for size in sorted(K.faces_by_size, reverse=True):
        for sigma in sorted(K.faces_by_size[size]):
            b = betti(K.link_mask(sigma))
            if b.is_acyclic:
                acyclic.append(sigma)
            elif not _sphere_condition(b, dim - size):
                failures.append((vertices_of(sigma), b))
    reasons = []
    boundary = None
    if not acyclic:
        reasons.append("no face has an acyclic link")
    else:
        boundary = SimplicialComplex(maximal_masks(acyclic))
        if boundary.all_faces != frozenset(acyclic):
            reasons.append("acyclic-link faces are not closed under containment")
        elif boundary.dim != dim - 1:
            reasons.append(f"acyclic-link faces have dimension {boundary.dim}, expected {dim - 1}")
        elif not is_homology_sphere(boundary, p, face_cap).is_sphere:
            reasons.append("acyclic-link faces do not form a homology sphere")
    if failures or reasons:
        return SphereCertificate(NEITHER, p, dim, failures, None, reasons)
    return SphereCertificate(BALL, p, dim, [], boundary)


def boundary_complex(B: SimplicialComplex, p: int = 2) -> SimplicialComplex:
    cert = is_homology_ball(B, p)
    if not cert.is_ball:
        raise ComplexError("input is not a homology ball")
    return cert.boundary


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** (s - 1) * len(g) for s, g in K.faces_by_size.items() if s > 0)
