"""Versioned structured-text documents: a schema tag on line 1, then sorted JSON.

Counts are written as decimal strings so arbitrarily large integers survive
any JSON reader and diff cleanly.
"""

from __future__ import annotations

import json

from .graph_core import Graph


def dump_document(payload: dict) -> str:
    return f"# {payload['schema']}\n" + json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_document(text: str) -> dict:
    first, _, body = text.partition("\n")
    if not first.startswith("# "):
        raise ValueError("missing schema header line")
    doc = json.loads(body)
    if doc.get("schema") != first[2:].strip():
        raise ValueError("schema header does not match document")
    return doc


def graph_doc(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_doc(doc: dict) -> Graph:
    return Graph.from_edges(int(doc["n"]), [tuple(e) for e in doc["edges"]])
