"""Acceptance criteria 1-11.

Each test prints one ``CRITERION n: PASS|FAIL`` line.  Run the whole gate with

    pytest tests/test_acceptance.py -s

or standalone with ``python3 -m tests.test_acceptance``.
"""
from __future__ import annotations

import random
import time
from math import comb
from pathlib import Path


from flaggamma.catalog import flag_2_spheres, icosahedron, standard_catalog
from flaggamma.checks import certify, gal_check, write_witness
from flaggamma.complex_core import Graph, cycle, octahedral_sphere
from flaggamma.equators import (
    enumerate_equators,
    equator_conjecture_check,
    equators_by_subsets,
    gamma_decomposition_check,
    link_conjecture_check,
    structure_check,
)
from flaggamma.io import format_structured, format_text, parse_structured, parse_text
from flaggamma.isomorphism import is_isomorphic
from flaggamma.matching import (
    decompose,
    disjoint_facet,
    h1hi_ineq_check,
    h_ineq_check,
    h_ineq_via_matching,
    half_integral_pm,
    half_tutte_brute,
)
from flaggamma.moves import (
    c4_free_edges,
    contract_edge_onto,
    contraction_gamma_check,
    generate_family_S,
    stellar_subdivide_edge,
    suspension_gamma_check,
)
from flaggamma.vectors import IntPolynomial, gamma_polynomial, h_polynomial, mcmullen_identity_check

WITNESS_DIR = Path(__file__).resolve().parent.parent / "witnesses"
RESULTS: list[str] = []


def report(n: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line, flush=True)
    RESULTS.append(line)
    assert ok, line


_catalog = None


def catalog():
    """The standard catalog plus every flag 2-sphere on 11 vertices, all certified."""
    global _catalog
    if _catalog is None:
        members = [(e.name, e.complex) for e in standard_catalog(max_flag2=11)]
        for name, K in members:
            assert certify(K).ok, f"catalog member {name} failed certification"
        _catalog = members
    return _catalog


def test_criterion_1_vectors():
    t0 = time.perf_counter()
    ok = True
    for d in range(1, 6):
        K = octahedral_sphere(d)
        ok &= h_polynomial(K) == IntPolynomial([comb(d, i) for i in range(d + 1)])
        ok &= gamma_polynomial(K) == IntPolynomial([1])
    ico = icosahedron()
    ok &= h_polynomial(ico) == IntPolynomial([1, 9, 9, 1])
    ok &= gamma_polynomial(ico) == IntPolynomial([1, 6])
    ok &= gamma_polynomial(cycle(5)) == IntPolynomial([1, 1])
    dt = time.perf_counter() - t0
    report(1, bool(ok) and dt < 1.0, f"octahedral d<=5, icosahedron, 5-cycle vectors exact in {dt:.3f}s")


def test_criterion_2_gamma_identities():
    t0 = time.perf_counter()
    instances = edges = violations = 0
    for d in (2, 3, 4):
        for steps in range(0, 9):
            for seed in range(8):
                K, _ = generate_family_S(d, steps, 1000 * d + 10 * steps + seed)
                instances += 1
                if not suspension_gamma_check(K).ok:
                    violations += 1
                for e in c4_free_edges(K):
                    edges += 1
                    if not contraction_gamma_check(K, e).ok:
                        violations += 1
    dt = time.perf_counter() - t0
    report(2, instances >= 200 and violations == 0 and dt < 60,
           f"{instances} family-S instances, {edges} admissible edges, {violations} violations, {dt:.1f}s")


def test_criterion_3_equator_decomposition():
    spheres = flag_2_spheres(12)
    members = equators = mismatches = bad = 0
    for n, ks in spheres.items():
        for K in ks:
            members += 1
            found = enumerate_equators(K)
            if found.truncated or [r.W for r in found] != equators_by_subsets(K):
                mismatches += 1
            for rec in found:
                equators += 1
                if not gamma_decomposition_check(K, rec.W).ok:
                    bad += 1
    report(3, mismatches == 0 and bad == 0 and equators > 0,
           f"{members} flag 2-spheres (n<=12), {equators} equators, {mismatches} oracle mismatches, {bad} identity failures")


def test_criterion_4_half_integral_matchings():
    no_pm = partition_bad = disagreements = compared = 0
    for name, K in catalog():
        comp = K.graph.complement()
        pm = half_integral_pm(comp)
        if pm is None or not pm.is_valid(comp):
            no_pm += 1
            continue
        dec = decompose(pm)
        ok = dec.covered() == list(K.vertices) and all(len(c) % 2 for c in dec.odd_cycles)
        ok &= all(comp.has_edge(u, v) for u, v in dec.matching_edges)
        partition_bad += not ok
        if K.n <= 16:
            compared += 1
            disagreements += half_tutte_brute(comp).ok != (pm is not None)
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 16)
        p = rng.choice([0.1, 0.2, 0.35, 0.5])
        G = Graph.from_edges(range(n), [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        compared += 1
        disagreements += half_tutte_brute(G).ok != (half_integral_pm(G) is not None)
    report(4, no_pm == 0 and partition_bad == 0 and disagreements == 0,
           f"{len(catalog())} members: {no_pm} without matching, {partition_bad} bad partitions; "
           f"{compared} graphs vs half-Tutte brute force, {disagreements} disagreements")


def test_criterion_5_link_h_inequality():
    fails = tight_mismatch = identity_fail = tight_count = 0
    for name, K in catalog():
        r = h_ineq_check(K)
        lhs, rhs = r.details["lhs"], r.details["rhs"]
        fails += not all(lhs[i] <= rhs[i] for i in range(max(lhs.degree, rhs.degree) + 1))
        cross = is_isomorphic(K, octahedral_sphere(K.dim + 1))
        tight_count += r.details["tight"]
        tight_mismatch += r.details["tight"] != cross
        identity_fail += not h_ineq_via_matching(K).details.get("identity", False)
    report(5, fails == 0 and tight_mismatch == 0 and identity_fail == 0,
           f"{len(catalog())} members: {fails} violations, {tight_count} tight (all crosspolytopes: "
           f"{tight_mismatch == 0}), {identity_fail} per-nonedge identity failures")


def test_criterion_6_h1hi():
    fails = 0
    index0_equal = True
    for name, K in catalog():
        rows = h1hi_ineq_check(K).details["rows"]
        fails += sum(not r["holds"] for r in rows if r["i"] >= 1)
        index0_equal &= rows[0]["equal"]
    row = h1hi_ineq_check(octahedral_sphere(3)).details["rows"][1]
    oct_ok = (row["lhs"], row["rhs"]) == (9, 9)
    report(6, fails == 0 and oct_ok,
           f"{len(catalog())} members: {fails} violations for 1<=i<=d; octahedron i=1 9=9: {oct_ok}; "
           f"index 0 holds with equality on all members: {index0_equal}")


def test_criterion_7_mcmullen():
    fails = [name for name, K in catalog() if not mcmullen_identity_check(K, certified=True).ok]
    report(7, not fails, f"{len(catalog())} members, failures: {fails}")


def test_criterion_8_disjoint_facets():
    facets = 0
    missing = []
    for name, K in catalog():
        for F in K.facets:
            facets += 1
            G = disjoint_facet(K, F)
            if G is None or (sum(1 << v for v in G) & F) or sum(1 << v for v in G) not in K.facets:
                missing.append((name, F))
    report(8, not missing, f"{facets} facets over {len(catalog())} members, {len(missing)} without disjoint facet")


def test_criterion_9_dim2_structure():
    t0 = time.perf_counter()
    spheres = flag_2_spheres(11)
    members = failing = no_c4_free = 0
    for n, ks in spheres.items():
        for K in ks:
            members += 1
            sv = structure_check(K)
            failing += not sv.holds
            if not is_isomorphic(K, octahedral_sphere(3)) and not c4_free_edges(K):
                no_c4_free += 1
    dt = time.perf_counter() - t0
    counts = {n: len(ks) for n, ks in spheres.items()}
    report(9, failing == 0 and no_c4_free == 0 and dt < 600,
           f"{members} flag 2-spheres {counts}: {failing} without an alternative, "
           f"{no_c4_free} non-octahedral without c4-free edge, {dt:.1f}s")


def test_criterion_10_conjecture_scans():
    violations = {"gal": [], "link": [], "equator": []}
    truncated = []
    for name, K in catalog():
        for check, r in (("gal", gal_check(K)), ("link", link_conjecture_check(K)),
                         ("equator", equator_conjecture_check(K))):
            if r.verdict == "fail":
                violations[check].append(name)
                write_witness(WITNESS_DIR, name, K, r)
            elif r.verdict == "truncated":
                truncated.append((name, check))
    total = sum(len(v) for v in violations.values())
    report(10, total == 0,
           f"no counterexample found within limits on {len(catalog())} members "
           f"(violations {total}, truncated searches {len(truncated)})" if total == 0
           else f"violations {violations}; witnesses in {WITNESS_DIR}")


def test_criterion_11_round_trips():
    rng = random.Random(11)
    bad = 0
    for _ in range(100):
        d = rng.choice([2, 3, 4])
        K, _ = generate_family_S(d, rng.randint(0, 6), rng.randrange(10**6))
        u, v = rng.choice(K.graph.edges)
        L = stellar_subdivide_edge(K, (u, v))
        w = L.next_free_vertex() - 1
        bad += not is_isomorphic(contract_edge_onto(L, u, w), K)
    stable = True
    for name, K in catalog():
        t = format_text(K, name)
        s = format_structured(K, name)
        stable &= format_text(parse_text(t), name) == t and parse_text(t) == K
        K2, n2 = parse_structured(s)
        stable &= format_structured(K2, n2) == s
    report(11, bad == 0 and stable, f"100 subdivide/contract cases, {bad} non-isomorphic; file round-trips byte-stable: {stable}")


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[2]))
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
