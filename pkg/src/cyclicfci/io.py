"""JSON documents for graphs and DPAGs, an edge-list importer and DOT export."""

import json
from dataclasses import dataclass, field

from .errors import ParseError
from .graphs import DMG, DPAG, Mark

FORMAT_VERSION = 1

MARK_NAMES = {Mark.TAIL: "tail", Mark.ARROW: "arrow", Mark.CIRCLE: "circle"}
DOT_GLYPHS = {Mark.TAIL: "none", Mark.ARROW: "normal", Mark.CIRCLE: "odot"}


@dataclass(frozen=True)
class GraphDocument:
    graph: DMG
    context_nodes: tuple = field(default=())
    version: int = FORMAT_VERSION


@dataclass(frozen=True)
class DpagDocument:
    dpag: DPAG
    version: int = FORMAT_VERSION


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise ParseError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _node_names(doc):
    nodes = _require(doc, "nodes", list, "document")
    names = []
    for k, node in enumerate(nodes):
        if isinstance(node, str):
            names.append(node)
        else:
            names.append(_require(node, "name", str, f"nodes[{k}]"))
    return names


def _check_version(doc):
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version!r}")
    return version


# -- graphs --------------------------------------------------------------------


def graph_to_document(G: DMG, context_nodes=()):
    doc = {
        "version": FORMAT_VERSION,
        "nodes": [{"name": name} for name in G.names],
        "edges": [{"from": a, "to": b, "type": kind} for a, b, kind in G.edge_list()],
    }
    if context_nodes:
        doc["context_nodes"] = [G.name(k) for k in context_nodes]
    return doc


def dump_graph(G: DMG, context_nodes=()) -> str:
    return json.dumps(graph_to_document(G, context_nodes), indent=2) + "\n"


def graph_from_document(doc) -> GraphDocument:
    if not isinstance(doc, dict):
        raise ParseError("document: expected a JSON object")
    version = _check_version(doc)
    names = _node_names(doc)
    directed, bidirected = [], []
    for k, edge in enumerate(_require(doc, "edges", list, "document")):
        where = f"edges[{k}]"
        a = _require(edge, "from", str, where)
        b = _require(edge, "to", str, where)
        kind = _require(edge, "type", str, where)
        if kind == "directed":
            directed.append((a, b))
        elif kind == "bidirected":
            bidirected.append((a, b))
        else:
            raise ParseError(f"{where}: edge type must be 'directed' or 'bidirected', got {kind!r}")
    G = DMG(names, directed, bidirected)
    contexts = doc.get("context_nodes", [])
    if not isinstance(contexts, list):
        raise ParseError("document: field 'context_nodes' must be list")
    for c in contexts:
        G.index(c)
    return GraphDocument(G, tuple(contexts), version)


def load_graph_document(text) -> GraphDocument:
    return graph_from_document(_load_json(text))


def parse_graph(text) -> DMG:
    """DMG from a graph JSON document; see :func:`load_graph_document` for context metadata."""
    return load_graph_document(text).graph


def parse_edge_list(text, names=None) -> DMG:
    """DMG from lines ``a -> b``, ``a <- b``, ``a <-> b`` or a lone node name.

    ``#`` starts a comment.  Nodes appear in order of first mention unless
    ``names`` fixes the universe.
    """
    seen = list(names) if names is not None else []
    directed, bidirected = [], []

    def note(v):
        if names is None and v not in seen:
            seen.append(v)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            note(parts[0])
            continue
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'a -> b', 'a <- b' or 'a <-> b', got {raw.strip()!r}")
        a, sym, b = parts
        note(a)
        note(b)
        if sym == "->":
            directed.append((a, b))
        elif sym == "<-":
            directed.append((b, a))
        elif sym == "<->":
            bidirected.append((a, b))
        else:
            raise ParseError(f"line {lineno}: unknown edge symbol {sym!r}")
    return DMG(seen, directed, bidirected)


# -- DPAGs ---------------------------------------------------------------------


def dpag_to_document(P: DPAG):
    edges = []
    for i, j, mi, mj in P.edges():
        edges.append({"a": P.names[i], "b": P.names[j], "mark_a": MARK_NAMES[Mark(mi)], "mark_b": MARK_NAMES[Mark(mj)]})
    return {"version": FORMAT_VERSION, "nodes": [{"name": name} for name in P.names], "edges": edges}


def dump_dpag(P: DPAG) -> str:
    return json.dumps(dpag_to_document(P), indent=2) + "\n"


def dpag_from_document(doc) -> DPAG:
    if not isinstance(doc, dict):
        raise ParseError("document: expected a JSON object")
    _check_version(doc)
    names = _node_names(doc)
    edges = []
    for k, edge in enumerate(_require(doc, "edges", list, "document")):
        where = f"edges[{k}]"
        marks = []
        for key in ("mark_a", "mark_b"):
            value = _require(edge, key, str, where)
            if value not in ("tail", "arrow", "circle"):
                raise ParseError(f"{where}: {key} must be 'tail', 'arrow' or 'circle', got {value!r}")
            marks.append(value)
        edges.append((_require(edge, "a", str, where), _require(edge, "b", str, where), *marks))
    return DPAG.from_edges(names, edges)


def parse_dpag(text) -> DPAG:
    return dpag_from_document(_load_json(text))


# -- DOT -----------------------------------------------------------------------


def _quote(name):
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(P: DPAG, name="DPAG") -> str:
    """DOT digraph with one edge statement per DPAG edge; marks become arrow glyphs."""
    lines = [f"digraph {_quote(name)} {{"]
    for v in P.names:
        lines.append(f"  {_quote(v)};")
    for i, j, mi, mj in P.edges():
        lines.append(
            f"  {_quote(P.names[i])} -> {_quote(P.names[j])} "
            f"[dir=both, arrowtail={DOT_GLYPHS[Mark(mi)]}, arrowhead={DOT_GLYPHS[Mark(mj)]}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
