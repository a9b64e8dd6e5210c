"""Exact f-, h- and γ-polynomials and coefficientwise comparisons."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

from .complex_core import SimplicialComplex
from .report import Report, verdict_of


class DehnSommervilleError(ValueError):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of ``t**i``.

    Trailing zeros are stripped, so polynomials of different nominal length
    compare as polynomials.
    """

    coeffs: tuple[int, ...] = ()

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def one_plus_t(cls, k: int) -> "IntPolynomial":
        return cls(comb(k, i) for i in range(k + 1))

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(other * c for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "IntPolynomial":
        """Multiply by ``t**k``."""
        return IntPolynomial((0,) * k + self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __le__(self, other: "IntPolynomial") -> bool:
        return poly_leq(self, other)

    def __ge__(self, other: "IntPolynomial") -> bool:
        return poly_leq(other, self)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({self.coeffs})"


T = IntPolynomial((0, 1))


def poly_leq(p: IntPolynomial, q: IntPolynomial) -> bool:
    n = max(len(p.coeffs), len(q.coeffs))
    return all(p[i] <= q[i] for i in range(n))


def f_polynomial(K: SimplicialComplex) -> IntPolynomial:
    by_size = K.faces_by_size
    return IntPolynomial(len(by_size.get(i, ())) for i in range(K.dim + 2))


def h_from_f(f: IntPolynomial, d: int) -> IntPolynomial:
    """h_k = Σ_{i≤k} (-1)^{k-i} C(d-i, k-i) f_{i-1}."""
    if f.degree > d:
        raise ValueError(f"f-polynomial of degree {f.degree} exceeds d={d}")
    return IntPolynomial(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1)) for k in range(d + 1)
    )


def f_from_h(h: IntPolynomial, d: int) -> IntPolynomial:
    if h.degree > d:
        raise ValueError(f"h-polynomial of degree {h.degree} exceeds d={d}")
    return IntPolynomial(sum(comb(d - k, i - k) * h[k] for k in range(i + 1)) for i in range(d + 1))


def check_dehn_sommerville(h: IntPolynomial, d: int) -> bool:
    return h.degree <= d and all(h[i] == h[d - i] for i in range(d + 1))


def gamma_from_h(h: IntPolynomial, d: int) -> IntPolynomial:
    """The unique γ with h(t) = Σ γ_i t^i (1+t)^{d-2i}."""
    if not check_dehn_sommerville(h, d):
        raise DehnSommervilleError(f"Dehn–Sommerville violated: h={list(h)}, d={d}")
    rem = h
    gamma = []
    for i in range(d // 2 + 1):
        g = rem[i]
        gamma.append(g)
        rem = rem - g * IntPolynomial.one_plus_t(d - 2 * i).shift(i)
    if rem:
        raise DehnSommervilleError(f"h={list(h)} leaves remainder {list(rem)}")
    return IntPolynomial(gamma)


def h_from_gamma(gamma: IntPolynomial, d: int) -> IntPolynomial:
    out = IntPolynomial()
    for i, g in enumerate(gamma.coeffs):
        out = out + g * IntPolynomial.one_plus_t(d - 2 * i).shift(i)
    return out


def h_polynomial(K: SimplicialComplex) -> IntPolynomial:
    d = K.dim + 1
    return h_from_f(f_polynomial(K), d)


def gamma_polynomial(K: SimplicialComplex) -> IntPolynomial:
    d = K.dim + 1
    return gamma_from_h(h_from_f(f_polynomial(K), d), d)


@dataclass(frozen=True)
class VectorReport:
    f: IntPolynomial
    h: IntPolynomial
    gamma: IntPolynomial | None
    d: int
    dehn_sommerville_ok: bool

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "f": self.f.to_json(),
            "h": self.h.to_json(),
            "gamma": None if self.gamma is None else self.gamma.to_json(),
            "dehn_sommerville_ok": self.dehn_sommerville_ok,
        }


def vector_report(K: SimplicialComplex) -> VectorReport:
    d = K.dim + 1
    f = f_polynomial(K)
    h = h_from_f(f, d)
    ds = check_dehn_sommerville(h, d)
    return VectorReport(f, h, gamma_from_h(h, d) if ds else None, d, ds)


def mcmullen_identity_check(K: SimplicialComplex, p: int = 2, certified: bool | None = None) -> Report:
    """Σ_v h_{i-1}(lk_v K) = i·h_i(K) + (d-i+1)·h_{i-1}(K) for 1 ≤ i ≤ d."""
    d = K.dim + 1
    h = h_polynomial(K)
    link_sum = IntPolynomial()
    for v in K.vertices:
        link_sum = link_sum + h_polynomial(K.link_mask(1 << v))
    rows = []
    for i in range(1, d + 1):
        lhs = link_sum[i - 1]
        rhs = i * h[i] + (d - i + 1) * h[i - 1]
        rows.append({"i": i, "lhs": lhs, "rhs": rhs})
    bad = [r for r in rows if r["lhs"] != r["rhs"]]
    return Report(
        check="mcmullen",
        verdict=verdict_of(not bad),
        witnesses={"violations": bad} if bad else {},
        details={"rows": rows, "h": h},
        parameters={"p": p, "certified": certified},
    )
