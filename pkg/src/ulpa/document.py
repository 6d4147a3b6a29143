"""The ultragraph document format (JSON) and DOT export."""

from __future__ import annotations

import json

from .ultragraph import InvalidUltragraph, Ultragraph, validate


class DocumentError(ValueError):
    """Malformed or invalid document; ``diagnostics`` lists every problem found."""

    def __init__(self, diagnostics: list[str]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(diagnostics))


def parse_document(text: str) -> Ultragraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError([f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"])
    problems = []
    if not isinstance(doc, dict):
        raise DocumentError(["top level must be an object with 'vertices' and 'edges'"])
    for key in sorted(set(doc) - {"vertices", "edges"}):
        problems.append(f"unknown top-level key {key!r}")
    vertices = doc.get("vertices")
    edges = doc.get("edges")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        problems.append("'vertices' must be a list of names")
        vertices = []
    if not isinstance(edges, list):
        problems.append("'edges' must be a list of records")
        edges = []
    recs = []
    for i, rec in enumerate(edges):
        if not isinstance(rec, dict) or set(rec) != {"id", "source", "range"}:
            problems.append(f"edge record #{i} must have exactly the keys id, source, range")
            continue
        eid, src, rng = rec["id"], rec["source"], rec["range"]
        if not isinstance(eid, str) or not isinstance(src, str) or not isinstance(rng, list) \
                or not all(isinstance(u, str) for u in rng):
            problems.append(f"edge {eid!r}: id and source must be names and range a list of names")
            continue
        recs.append((eid, src, rng))
    if problems:
        raise DocumentError(problems)
    violations = validate(vertices, recs)
    if violations:
        raise DocumentError(violations)
    return Ultragraph.build(vertices, recs)


def load_document(path: str) -> Ultragraph:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def emit_document(U: Ultragraph) -> str:
    """Canonical text: sorted keys, sorted vertex and edge ids, sorted ranges."""
    vertices, edges = U.to_records()
    doc = {
        "vertices": sorted(vertices),
        "edges": [{"id": e, "source": s, "range": sorted(r)} for e, s, r in sorted(edges)],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _q(name: str) -> str:
    return json.dumps(name)


def emit_dot(U: Ultragraph) -> str:
    """Vertices as nodes; each edge fans out to one arrow per range vertex."""
    lines = ["digraph ultragraph {"]
    for v in sorted(U.vertex_names):
        lines.append(f"  {_q(v)};")
    for e in sorted(U.edge_names):
        i = U.e(e)
        src = U.vertex_names[U.src[i]]
        for u in sorted(U.vnames(U.rng[i])):
            lines.append(f"  {_q(src)} -> {_q(u)} [label={_q(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["DocumentError", "InvalidUltragraph", "emit_document", "emit_dot",
           "load_document", "parse_document"]
