"""Facet-list files: plain text (one facet per line) and JSON documents."""
from __future__ import annotations

import json
from pathlib import Path

from .complex_core import ComplexError, SimplicialComplex, from_facets, vertices_of


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _token(tok: str):
    if tok.lstrip("-").isdigit():
        v = int(tok)
        if v < 0:
            raise ValueError(f"negative vertex label {tok}")
        return v
    return tok


def parse_text(text: str) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            face = [_token(t) for t in line.split()]
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if len(set(face)) != len(face):
            raise ParseError(f"repeated vertex in facet {line!r}", lineno)
        facets.append(face)
    if not facets:
        raise ParseError("no facets")
    try:
        return from_facets(facets)
    except ComplexError as exc:
        raise ParseError(str(exc)) from None


def parse_structured(text: str) -> tuple[SimplicialComplex, str | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("facets"), list):
        raise ParseError("document needs a 'facets' array")
    facets = doc["facets"]
    for i, f in enumerate(facets):
        if not isinstance(f, list) or not all(isinstance(x, (int, str)) and not isinstance(x, bool) for x in f):
            raise ParseError(f"facet {i} is not an array of integer or string labels")
    try:
        K = from_facets(facets)
    except ComplexError as exc:
        raise ParseError(str(exc)) from None
    if "dim" in doc and doc["dim"] is not None and doc["dim"] != K.dim:
        raise ParseError(f"declared dim {doc['dim']} but facets give {K.dim}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("'name' must be a string")
    return K, name


def _labelled_facets(K: SimplicialComplex) -> list[list]:
    return [[K.label(v) for v in vertices_of(f)] for f in K.facets]


def format_text(K: SimplicialComplex, name: str | None = None) -> str:
    lines = [f"# {name}"] if name else []
    lines += [" ".join(str(x) for x in face) for face in _labelled_facets(K)]
    return "\n".join(lines) + "\n"


def format_structured(K: SimplicialComplex, name: str | None = None) -> str:
    doc = {"name": name, "dim": K.dim, "facets": _labelled_facets(K)}
    return json.dumps(doc, sort_keys=True) + "\n"


def read_complex(path: str | Path) -> tuple[SimplicialComplex, str | None]:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        K, name = parse_structured(text)
        return K, name or path.stem
    return parse_text(text), path.stem


def write_complex(K: SimplicialComplex, path: str | Path, name: str | None = None) -> Path:
    path = Path(path)
    text = format_structured(K, name) if path.suffix == ".json" else format_text(K, name)
    path.write_text(text)
    return path
