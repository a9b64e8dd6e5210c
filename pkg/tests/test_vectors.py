from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flaggamma.complex_core import SimplicialComplex, cycle, octahedral_sphere, suspension
from flaggamma.vectors import (
    DehnSommervilleError,
    IntPolynomial,
    check_dehn_sommerville,
    f_from_h,
    f_polynomial,
    gamma_from_h,
    gamma_polynomial,
    h_from_f,
    h_from_gamma,
    h_polynomial,
    mcmullen_identity_check,
    poly_leq,
)

from .strategies import family_S

P = IntPolynomial


def test_f_polynomial_examples(c5, octahedron):
    assert f_polynomial(c5) == P([1, 5, 5])
    assert f_polynomial(octahedron) == P([1, 6, 12, 8])
    assert f_polynomial(SimplicialComplex((1,))) == P([1, 1])


def test_h_from_f_examples(c5, ico):
    assert h_from_f(P([1, 5, 5]), 2) == P([1, 3, 1])
    for d in range(1, 6):
        assert h_polynomial(octahedral_sphere(d)) == P([comb(d, i) for i in range(d + 1)])
    assert h_from_f(P([1, 12, 30, 20]), 3) == P([1, 9, 9, 1])
    assert h_polynomial(ico) == P([1, 9, 9, 1])


def test_gamma_from_h_examples():
    assert gamma_from_h(P([1, 3, 3, 1]), 3) == P([1])
    assert gamma_from_h(P([1, 9, 9, 1]), 3) == P([1, 6])
    assert gamma_from_h(P([1, 3, 1]), 2) == P([1, 1])
    with pytest.raises(DehnSommervilleError):
        gamma_from_h(P([1, 2, 1, 1]), 3)


def test_dehn_sommerville_and_poly_leq():
    assert check_dehn_sommerville(P([1, 3, 3, 1]), 3)
    assert not check_dehn_sommerville(P([1, 2, 1, 1]), 3)
    assert poly_leq(P([1, 1]), P([1, 6]))
    assert not poly_leq(P([1, 2]), P([1, 1]))
    assert poly_leq(P([4, 0, 2]), P([4, 0, 2]))
    assert not poly_leq(P([1, 0, 1]), P([1]))


def test_mcmullen_examples(octahedron, ico):
    r = mcmullen_identity_check(octahedron)
    row1 = r.details["rows"][0]
    assert (row1["lhs"], row1["rhs"]) == (6, 6)
    r = mcmullen_identity_check(ico)
    row2 = r.details["rows"][1]
    assert row2["lhs"] == 36 == 2 * 9 + 2 * 9
    assert r.ok


def test_polynomial_arithmetic():
    a, b = P([1, 2]), P([0, 1, 3])
    assert a + b == P([1, 3, 3])
    assert (a - a) == P()
    assert a * b == P([0, 1, 5, 6])
    assert a.shift(2) == P([0, 0, 1, 2])
    assert P.one_plus_t(3) == P([1, 3, 3, 1])
    assert P([1, 0, 0]).degree == 0 and P([1, 0, 0]) == P([1])
    assert a(2) == 5


coeffs = st.lists(st.integers(-50, 50), min_size=1, max_size=5)


@given(coeffs, st.integers(0, 3))
def test_gamma_h_round_trip(g, extra):
    gamma = P(g)
    d = 2 * max(len(g) - 1, 0) + extra
    h = h_from_gamma(gamma, d)
    assert check_dehn_sommerville(h, d)
    assert gamma_from_h(h, d) == gamma


@given(st.integers(0, 6).flatmap(lambda d: st.tuples(st.just(d), st.lists(st.integers(-20, 20), min_size=d + 1, max_size=d + 1))))
def test_f_h_round_trip(args):
    d, hs = args
    h = P(hs)
    assert h_from_f(f_from_h(h, d), d) == h


@given(family_S())
@settings(max_examples=40, deadline=None)
def test_family_S_vectors(K):
    d = K.dim + 1
    h = h_polynomial(K)
    assert check_dehn_sommerville(h, d)
    assert h(1) == len(K.facets)
    assert f_from_h(h, d) == f_polynomial(K)
    assert gamma_polynomial(K).is_nonnegative()
    assert mcmullen_identity_check(K).ok


@given(family_S(ds=(2, 3)))
@settings(max_examples=20, deadline=None)
def test_mcmullen_on_suspensions(K):
    assert mcmullen_identity_check(suspension(K)).ok


def test_cycle_gamma():
    for n in range(4, 10):
        assert gamma_polynomial(cycle(n)) == P([1, n - 4])
