import itertools

import pytest
from hypothesis import given, settings

from flaggamma.catalog import flag_2_spheres
from flaggamma.complex_core import ComplexError, cycle, join, octahedral_sphere, suspension, vertices_of
from flaggamma.equators import (
    ball_decomposition,
    classify_vertex_link,
    dim2_structure_check,
    enumerate_equators,
    equator_conjecture_check,
    equators_by_subsets,
    gamma_decomposition_check,
    induced_cycles,
    is_suspension,
    link_conjecture_check,
    structure_check,
    structure_report,
)
from flaggamma.moves import generate_family_S
from flaggamma.vectors import IntPolynomial

from .strategies import family_S


def _brute_induced_cycles(G, min_len=4):
    out = set()
    vs = G.vertices
    for k in range(min_len, len(vs) + 1):
        for combo in itertools.combinations(vs, k):
            w = sum(1 << v for v in combo)
            H = G.induced(w)
            if all(H.degree(v) == 2 for v in combo):
                # connected 2-regular graph
                seen, stack = {combo[0]}, [combo[0]]
                while stack:
                    x = stack.pop()
                    for y in vertices_of(H.adj[x]):
                        if y not in seen:
                            seen.add(y)
                            stack.append(y)
                if len(seen) == k:
                    out.add(combo)
    return out


def test_is_suspension_examples(octahedron, ico, c5):
    a, b = is_suspension(octahedron)
    assert not octahedron.graph.has_edge(a, b)
    assert is_suspension(ico) is None
    assert is_suspension(suspension(c5)) == (5, 6)


def test_equators_octahedron_against_oracle(octahedron):
    found = [r.W for r in enumerate_equators(octahedron)]
    assert found == equators_by_subsets(octahedron)
    assert len(found) == 3
    assert all(r.is_vertex_link is not None for r in enumerate_equators(octahedron))


def test_equators_cycle_are_nonadjacent_pairs(c5):
    found = [r.W for r in enumerate_equators(c5)]
    pairs = [(u, v) for u, v in itertools.combinations(range(5), 2) if not c5.graph.has_edge(u, v)]
    assert found == pairs == equators_by_subsets(c5)


def test_equators_icosahedron_include_links(ico):
    enum = enumerate_equators(ico)
    assert not enum.truncated
    links = {tuple(vertices_of(ico.graph.adj[v])) for v in ico.vertices}
    assert links <= {r.W for r in enum}
    non_links = [r for r in enum if r.is_vertex_link is None]
    assert non_links and all(len(r.W) >= 6 for r in non_links)
    # 2-dimensional enumeration against the induced-cycle brute force
    assert {r.W for r in enum} == _brute_induced_cycles(ico.graph)


@given(family_S(ds=(3,), max_steps=5))
@settings(max_examples=15, deadline=None)
def test_induced_cycles_match_brute_force(K):
    cycles, truncated, _ = induced_cycles(K.graph)
    assert not truncated
    assert {tuple(sorted(c)) for c in cycles} == _brute_induced_cycles(K.graph)
    assert len(cycles) == len({tuple(sorted(c)) for c in cycles})


@pytest.mark.parametrize("K", [
    octahedral_sphere(4),
    generate_family_S(4, 1, 0)[0],
    generate_family_S(4, 2, 3)[0],
    suspension(cycle(5)),
    join(cycle(4), cycle(5)),
], ids=["oct4", "S4-1", "S4-2", "susp-c5", "c4*c5"])
def test_subset_enumeration_matches_oracle(K):
    assert [r.W for r in enumerate_equators(K)] == equators_by_subsets(K)


def test_every_vertex_link_is_an_equator():
    for K in [generate_family_S(4, 3, s)[0] for s in range(3)] + [octahedral_sphere(4)]:
        ws = {r.W for r in enumerate_equators(K)}
        for v in K.vertices:
            assert vertices_of(K.graph.adj[v]) in ws


def test_subset_budget_truncates():
    K = generate_family_S(4, 2, 1)[0]
    enum = enumerate_equators(K, subset_budget=10)
    assert enum.truncated
    r = equator_conjecture_check(K, subset_budget=10)
    assert r.verdict == "truncated" and r.witnesses == {"limit": 10}


def test_classify_vertex_link(octahedron, ico):
    assert classify_vertex_link(ico, ico.link_mask(1 << 3)) == 3
    assert classify_vertex_link(octahedron, octahedron.link_mask(1 << 1)) == 0
    non_link = next(r for r in enumerate_equators(ico) if r.is_vertex_link is None)
    assert classify_vertex_link(ico, non_link.E) is None


def test_ball_decomposition_examples(octahedron, c5):
    dec = ball_decomposition(octahedron, [2, 3, 4, 5])
    assert dec.certified
    assert {dec.interior1, dec.interior2} == {(0,), (1,)}
    assert dec.B1 == octahedron.star_mask(1 << 0)
    dec = ball_decomposition(c5, [0, 2])
    assert dec.certified
    assert {len(dec.B1.facets), len(dec.B2.facets)} == {2, 3}
    with pytest.raises(ComplexError):
        ball_decomposition(octahedron, [0, 1])


def test_ball_decomposition_of_vertex_link(ico):
    v = 4
    dec = ball_decomposition(ico, vertices_of(ico.graph.adj[v]))
    sides = {dec.B1, dec.B2}
    assert sides == {ico.star_mask(1 << v), ico.antistar_mask(1 << v)}


def test_gamma_decomposition_examples(octahedron, ico):
    r = gamma_decomposition_check(octahedron, [2, 3, 4, 5])
    assert r.ok
    assert r.details["gamma_1"] == r.details["gamma_2"] == r.details["gamma_E"] == IntPolynomial([1])
    for rec in enumerate_equators(ico):
        r = gamma_decomposition_check(ico, rec.W)
        assert r.ok and r.details["f_identity"]
        if rec.is_vertex_link is not None:
            assert r.details["vertex_link_sides_ok"]


@given(family_S(ds=(3, 4), max_steps=4))
@settings(max_examples=12, deadline=None)
def test_gamma_decomposition_property(K):
    for rec in enumerate_equators(K):
        assert gamma_decomposition_check(K, rec.W).ok


def test_link_conjecture_examples(ico):
    r = link_conjecture_check(ico)
    assert r.ok
    assert all(g == IntPolynomial([1, 1]) for g in r.details["gamma_links"].values())
    assert link_conjecture_check(octahedral_sphere(4)).ok


@given(family_S())
@settings(max_examples=25, deadline=None)
def test_link_conjecture_on_family_S(K):
    assert link_conjecture_check(K).ok


def test_equator_conjecture_examples(octahedron, c5):
    assert equator_conjecture_check(octahedron).ok
    assert equator_conjecture_check(c5).ok
    for ks in flag_2_spheres(10).values():
        for K in ks:
            assert equator_conjecture_check(K).ok


def test_structure_examples(octahedron, ico):
    assert structure_check(octahedral_sphere(4)).alt0 is not None
    sv = structure_check(ico)
    assert len(sv.alt1) == 30 and sv.holds
    assert structure_report(octahedron).ok


def test_dim2_examples(octahedron, ico):
    r = dim2_structure_check(octahedron)
    assert r.ok and r.details["clause_i"] is not None
    r = dim2_structure_check(ico)
    assert r.ok and r.details["clause_i"] is None
    assert all(row["equator"] is not None for row in r.details["per_vertex"].values())
    assert dim2_structure_check(generate_family_S(3, 1, 0)[0]).ok
    with pytest.raises(ComplexError):
        dim2_structure_check(octahedral_sphere(4))
