"""Check registry and the per-member pipeline used by ``analyze`` and ``scan``."""
from __future__ import annotations

import time
from pathlib import Path
from typing import Callable

from .complex_core import ComplexError, SimplicialComplex, is_flag
from .equators import (
    DEFAULT_SUBSET_BUDGET,
    dim2_structure_check,
    equator_conjecture_check,
    link_conjecture_check,
    structure_report,
)
from .io import format_text
from .matching import (
    SearchCapExceeded,
    balanced_coloring,
    balanced_nonedge_check,
    disjoint_facet_check,
    h1hi_ineq_check,
    h_ineq_check,
    h_ineq_via_matching,
    matching_report,
)
from .moves import c4_free_edges, contraction_gamma_check, suspension_gamma_check
from .report import ERROR, FAIL, PASS, TRUNCATED, Report, verdict_of
from .topology import FaceCapExceeded, is_homology_sphere
from .vectors import DehnSommervilleError, gamma_polynomial, mcmullen_identity_check, vector_report

SKIPPED = "skipped"


def gal_check(K: SimplicialComplex, **_) -> Report:
    g = gamma_polynomial(K)
    neg = [i for i, c in enumerate(g) if c < 0]
    return Report(
        check="gal",
        verdict=verdict_of(not neg),
        details={"gamma": g},
        witnesses={"negative_indices": neg, "gamma": g} if neg else {},
        notes=[] if neg else ["no counterexample found"],
    )


def contraction_identity_all(K: SimplicialComplex, **_) -> Report:
    edges = c4_free_edges(K)
    bad = []
    for e in edges:
        r = contraction_gamma_check(K, e)
        if not r.ok:
            bad.append(r.witnesses)
    return Report(
        check="contraction-id",
        verdict=verdict_of(not bad),
        details={"admissible_edges": len(edges)},
        witnesses={"violations": bad} if bad else {},
    )


def _dim2(K, p, **_):
    if K.dim != 2:
        return Report("dim2", SKIPPED, notes=[f"dimension {K.dim}"])
    return dim2_structure_check(K, p)


def _balanced(K, **_):
    coloring = balanced_coloring(K)
    if coloring is None:
        return Report("balanced", SKIPPED, notes=["no balanced colouring"])
    return balanced_nonedge_check(K, coloring)


def _h_ineq(K, **_):
    agg = h_ineq_check(K)
    per_edge = h_ineq_via_matching(K)
    ok = agg.ok and per_edge.ok
    agg.details["per_nonedge_identity"] = per_edge.verdict
    if not ok:
        agg.verdict = FAIL
        agg.witnesses = {**agg.witnesses, **per_edge.witnesses}
    return agg


CHECKS: dict[str, Callable[..., Report]] = {
    "gal": gal_check,
    "link": lambda K, **_: link_conjecture_check(K),
    "equator": lambda K, p, subset_budget, **_: equator_conjecture_check(K, p, subset_budget),
    "structure": lambda K, p, subset_budget, **_: structure_report(K, p, subset_budget),
    "dim2": _dim2,
    "h-ineq": _h_ineq,
    "h1hi": lambda K, **_: h1hi_ineq_check(K),
    "matching": lambda K, **_: matching_report(K),
    "mcmullen": lambda K, p, **_: mcmullen_identity_check(K, p, certified=True),
    "contraction-id": contraction_identity_all,
    "suspension-id": lambda K, **_: suspension_gamma_check(K),
    "balanced": _balanced,
    "disjoint-facet": lambda K, **_: disjoint_facet_check(K),
}
DEFAULT_CHECKS = [c for c in CHECKS if c != "disjoint-facet"]


def parse_checks(selection: str | None) -> list[str]:
    if not selection or selection == "all":
        return list(DEFAULT_CHECKS)
    names = [c.strip() for c in selection.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    return names


def certify(K: SimplicialComplex, p: int = 2) -> Report:
    """Flagness, sphere certificate and the basic vectors."""
    t0 = time.perf_counter()
    flag = is_flag(K)
    cert = is_homology_sphere(K, p, max_failures=10)
    vr = vector_report(K)
    gamma_ok = vr.gamma is not None and vr.gamma.is_nonnegative()
    ok = flag and cert.is_sphere and vr.dehn_sommerville_ok
    return Report(
        check="certify",
        verdict=verdict_of(ok),
        details={
            "flag": flag,
            "sphere": cert,
            "vectors": vr,
            "gamma_nonnegative": gamma_ok,
        },
        witnesses={} if ok else {"flag": flag, "sphere_failures": cert.to_json()["failures"]},
        parameters={"p": p},
        timings={"seconds": round(time.perf_counter() - t0, 6)},
    )


def run_check(name: str, K: SimplicialComplex, p: int = 2, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> Report:
    t0 = time.perf_counter()
    try:
        r = CHECKS[name](K, p=p, subset_budget=subset_budget)
    except (FaceCapExceeded, SearchCapExceeded) as exc:
        r = Report(name, TRUNCATED, witnesses={"limit": str(exc)})
    except (ComplexError, DehnSommervilleError) as exc:
        r = Report(name, ERROR, notes=[str(exc)])
    r.check = name
    r.parameters = {"p": p, "subset_budget": subset_budget, **r.parameters}
    r.timings = {"seconds": round(time.perf_counter() - t0, 6)}
    return r


def run_member(name: str, K: SimplicialComplex | None, checks: list[str], p: int = 2,
               subset_budget: int = DEFAULT_SUBSET_BUDGET, load_error: str | None = None) -> list[Report]:
    """Certify a member and run the selected checks on it; never raises."""
    if K is None:
        return [Report("certify", ERROR, input=name, notes=[load_error or "could not load"])]
    try:
        cert = certify(K, p)
    except Exception as exc:  # a broken member must not stop a scan
        return [Report("certify", ERROR, input=name, notes=[f"{type(exc).__name__}: {exc}"])]
    cert.input = name
    if not cert.ok:
        cert.verdict = ERROR
        cert.notes.append("member is not a certified flag homology sphere; checks not run")
        return [cert]
    out = [cert]
    for c in checks:
        try:
            r = run_check(c, K, p, subset_budget)
        except Exception as exc:
            r = Report(c, ERROR, notes=[f"{type(exc).__name__}: {exc}"])
        r.input = name
        out.append(r)
    return out


def write_witness(directory: str | Path, member: str, K: SimplicialComplex, report: Report) -> Path:
    """Store the complex of a failing check as a facet file next to its report."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in member)
    path = directory / f"{safe}.{report.check}.counterexample"
    path.write_text(format_text(K, f"{member}: {report.check} failed"))
    return path


def summarize(reports: list[Report]) -> dict[str, int]:
    counts = {PASS: 0, FAIL: 0, TRUNCATED: 0, ERROR: 0, SKIPPED: 0}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return counts


def exit_code(reports: list[Report]) -> int:
    counts = summarize(reports)
    if counts[FAIL] or counts[ERROR]:
        return 1
    if counts[TRUNCATED]:
        return 3
    return 0
