"""Command-line entry point.

Reports go to stdout (one JSON document per line in structured mode, one
line per check in text mode); a human summary goes to stderr.

Exit codes: 0 all pass, 1 a check failed or a member errored, 2 usage or
parse error, 3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .catalog import CatalogEntry, standard_catalog
from .checks import (
    certify,
    exit_code,
    parse_checks,
    run_check,
    run_member,
    summarize,
    write_witness,
)
from .complex_core import SimplicialComplex
from .equators import DEFAULT_SUBSET_BUDGET, enumerate_equators
from .io import ParseError, read_complex, write_complex
from .moves import generate_family_S
from .report import FAIL, TRUNCATED, Report

ENV = {
    "char": ("FLAGGAMMA_CHAR", int, 2),
    "subset_budget": ("FLAGGAMMA_SUBSET_BUDGET", int, DEFAULT_SUBSET_BUDGET),
    "jobs": ("FLAGGAMMA_JOBS", int, 1),
    "seed": ("FLAGGAMMA_SEED", int, 0),
    "format": ("FLAGGAMMA_FORMAT", str, "structured"),
    "witness_dir": ("FLAGGAMMA_WITNESS_DIR", str, "witnesses"),
}


def _default(key: str):
    var, conv, fallback = ENV[key]
    raw = os.environ.get(var)
    return conv(raw) if raw not in (None, "") else fallback


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", type=int, default=_default("char"), help="field characteristic for homology (env FLAGGAMMA_CHAR)")
    common.add_argument("--subset-budget", type=int, default=_default("subset_budget"),
                        help="max vertex subsets examined per equator search (env FLAGGAMMA_SUBSET_BUDGET)")
    common.add_argument("--jobs", type=int, default=_default("jobs"), help="worker processes for scan (env FLAGGAMMA_JOBS)")
    common.add_argument("--seed", type=int, default=_default("seed"), help="random seed (env FLAGGAMMA_SEED)")
    common.add_argument("--format", choices=["text", "structured"], default=_default("format"),
                        help="report format on stdout (env FLAGGAMMA_FORMAT)")
    common.add_argument("--witness-dir", default=_default("witness_dir"),
                        help="directory for counterexample files (env FLAGGAMMA_WITNESS_DIR)")

    parser = argparse.ArgumentParser(prog="flaggamma", description="Certify flag homology spheres and check γ-vector inequalities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="certify one complex and report f/h/γ")
    p.add_argument("file")

    p = sub.add_parser("generate", parents=[common], help="write random crosspolytope subdivisions")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", default=".")

    p = sub.add_parser("scan", parents=[common], help="run checks over a catalog")
    p.add_argument("inputs", nargs="*", help="facet files or directories (default: the built-in catalog)")
    p.add_argument("--checks", default="all", help="comma-separated check names, or 'all'")
    p.add_argument("--max-flag2", type=int, default=10, help="largest flag 2-spheres in the built-in catalog")

    p = sub.add_parser("matching", parents=[common], help="half-integral matching of the complement graph")
    p.add_argument("file")

    p = sub.add_parser("equators", parents=[common], help="enumerate equators")
    p.add_argument("file")

    p = sub.add_parser("catalog", parents=[common], help="write the built-in catalog as facet files")
    p.add_argument("--out", required=True)
    p.add_argument("--max-flag2", type=int, default=10)
    return parser


def _emit(report: Report, fmt: str) -> None:
    if fmt == "structured":
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        extra = f" [{'; '.join(report.notes)}]" if report.notes else ""
        print(f"{report.input or '-'}\t{report.check}\t{report.verdict}{extra}")


def _finish(reports: list[Report], fmt: str) -> int:
    for r in reports:
        _emit(r, fmt)
    counts = summarize(reports)
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    return exit_code(reports)


def _save_witnesses(reports: list[Report], entries: dict[str, SimplicialComplex], directory: str) -> None:
    for r in reports:
        if r.verdict == FAIL and r.input in entries:
            path = write_witness(directory, r.input, entries[r.input], r)
            r.notes.append(f"witness written to {path}")
            print(f"counterexample: {r.input} ({r.check}) -> {path}", file=sys.stderr)


def _load(path: str) -> tuple[SimplicialComplex, str]:
    K, name = read_complex(path)
    return K, name or Path(path).stem


def cmd_analyze(args) -> int:
    K, name = _load(args.file)
    r = certify(K, args.char)
    r.input = args.file
    reports = [r]
    if r.ok:
        g = run_check("gal", K, args.char, args.subset_budget)
        g.input = args.file
        reports.append(g)
    _save_witnesses(reports, {args.file: K}, args.witness_dir)
    return _finish(reports, args.format)


def cmd_generate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        K, script = generate_family_S(args.d, args.steps, seed)
        stem = f"S-d{args.d}-s{args.steps}-seed{seed}"
        write_complex(K, out / f"{stem}.txt", stem)
        (out / f"{stem}.script.json").write_text(json.dumps(script.to_json(), sort_keys=True) + "\n")
        print(out / f"{stem}.txt")
    print(f"wrote {args.count} complexes to {out}", file=sys.stderr)
    return 0


def _file_entries(inputs: list[str]) -> list[tuple[str, SimplicialComplex | None, str | None]]:
    paths: list[Path] = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            paths += sorted(q for q in p.iterdir() if q.is_file() and not q.name.endswith(".script.json"))
        else:
            paths.append(p)
    out = []
    for p in paths:
        try:
            K, _ = read_complex(p)
            out.append((str(p), K, None))
        except (OSError, ParseError, ValueError) as exc:
            out.append((str(p), None, str(exc)))
    return out


def _member_task(task):
    name, K, load_error, checks, p, budget = task
    return run_member(name, K, checks, p, budget, load_error)


def cmd_scan(args) -> int:
    checks = parse_checks(args.checks)
    if args.inputs:
        members = _file_entries(args.inputs)
    else:
        members = [(e.name, e.complex, None) for e in standard_catalog(args.max_flag2)]
    names = [m[0] for m in members]
    if len(set(names)) != len(names):
        raise ValueError("catalog member names must be unique")
    tasks = [(name, K, err, checks, args.char, args.subset_budget) for name, K, err in members]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_member_task, tasks))
    else:
        results = [_member_task(t) for t in tasks]
    reports = [r for rs in results for r in rs]
    _save_witnesses(reports, {name: K for name, K, _ in members if K is not None}, args.witness_dir)
    return _finish(reports, args.format)


def cmd_matching(args) -> int:
    K, _ = _load(args.file)
    r = run_check("matching", K, args.char, args.subset_budget)
    r.input = args.file
    _save_witnesses([r], {args.file: K}, args.witness_dir)
    return _finish([r], args.format)


def cmd_equators(args) -> int:
    K, _ = _load(args.file)
    enum = enumerate_equators(K, args.char, args.subset_budget)
    r = Report(
        check="equators",
        verdict=TRUNCATED if enum.truncated else "pass",
        details={"count": len(enum), "method": enum.method, "examined": enum.examined,
                 "equators": [rec.to_json() for rec in enum]},
        witnesses={"limit": args.subset_budget} if enum.truncated else {},
        parameters={"p": args.char, "subset_budget": args.subset_budget},
        input=args.file,
    )
    return _finish([r], args.format)


def cmd_catalog(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    entries: list[CatalogEntry] = standard_catalog(args.max_flag2)
    for e in entries:
        write_complex(e.complex, out / f"{e.name}.txt", e.name)
    print(f"wrote {len(entries)} complexes to {out}", file=sys.stderr)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "generate": cmd_generate,
    "scan": cmd_scan,
    "matching": cmd_matching,
    "equators": cmd_equators,
    "catalog": cmd_catalog,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
