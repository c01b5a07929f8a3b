"""Graph documents (newline-delimited JSON), DOT rendering and the count cache."""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Iterable, Iterator

from .core import (
    Edge,
    GraphValidationError,
    StrandedGraph,
    VertexKind,
    build_graph,
    edge_slot,
    vertex_kernel,
)
from .enumeration import CountRow
from .topology import jacket

SCHEMA_VERSION = 1
RIBBON = "ribbon"
STRAND = "strand"


class GraphDocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message, self.line, self.path = message, line, path
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(f"field {path}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def graph_to_doc(graph: StrandedGraph, classification=None, topology=None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dimension": graph.dimension,
        "vertices": [k.value for k in graph.vertex_kinds],
        "edges": [{"minus": list(e.minus_end), "plus": list(e.plus_end)} for e in graph.edges],
        "external": [list(c) for c in graph.external_legs],
    }
    if graph.leg_labels is not None:
        doc["leg_labels"] = list(graph.leg_labels)
    if classification is not None:
        doc["classification"] = classification.to_dict()
        if topology is None and classification.topology is not None:
            topology = classification.topology
    if topology is not None:
        doc["topology"] = topology.to_dict()
    return doc


def _corner(value, path):
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)):
        raise GraphDocumentError("expected [vertex, corner]", path=path)
    return tuple(value)


def doc_to_graph(doc: dict) -> StrandedGraph:
    if not isinstance(doc, dict):
        raise GraphDocumentError("document must be a JSON object")
    for key in ("schema_version", "dimension", "vertices", "edges", "external"):
        if key not in doc:
            raise GraphDocumentError("missing field", path=key)
    if doc["schema_version"] != SCHEMA_VERSION:
        raise GraphDocumentError(f"unsupported schema_version {doc['schema_version']!r}",
                                 path="schema_version")
    if doc["dimension"] not in (3, 4):
        raise GraphDocumentError("dimension must be 3 or 4", path="dimension")
    kinds = []
    for i, k in enumerate(doc["vertices"]):
        try:
            kinds.append(VertexKind(k))
        except ValueError:
            raise GraphDocumentError(f"unknown vertex kind {k!r}", path=f"vertices[{i}]") from None
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, dict):
            raise GraphDocumentError("expected an object", path=f"edges[{i}]")
        for end in ("minus", "plus"):
            if end not in e:
                raise GraphDocumentError("missing field", path=f"edges[{i}].{end}")
        edges.append(Edge(_corner(e["minus"], f"edges[{i}].minus"),
                          _corner(e["plus"], f"edges[{i}].plus")))
    ext = [_corner(c, f"external[{i}]") for i, c in enumerate(doc["external"])]
    try:
        graph = build_graph(doc["dimension"], kinds, edges, ext)
    except GraphValidationError as exc:
        raise GraphDocumentError(str(exc)) from None
    if "leg_labels" in doc:
        labels = doc["leg_labels"]
        if not isinstance(labels, list) or len(labels) != len(ext):
            raise GraphDocumentError("must list one label per external leg", path="leg_labels")
        # labels follow the document's external order
        graph = StrandedGraph(graph.dimension, graph.vertex_kinds, graph.edges, ext, labels)
    return graph


def dumps(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def write_graphs(graphs: Iterable, destination) -> int:
    """Write one document per line. ``graphs`` may hold graphs or ready documents."""
    own = isinstance(destination, (str, Path))
    fh: IO[str] = open(destination, "w", encoding="utf-8") if own else destination
    n = 0
    try:
        for g in graphs:
            doc = g if isinstance(g, dict) else graph_to_doc(g)
            fh.write(dumps(doc) + "\n")
            n += 1
    finally:
        if own:
            fh.close()
    return n


def iter_documents(source) -> Iterator[tuple[int, dict]]:
    own = isinstance(source, (str, Path))
    fh: IO[str] = open(source, encoding="utf-8") if own else source
    try:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise GraphDocumentError(f"invalid JSON ({exc.msg})", line=lineno) from None
            yield lineno, doc
    finally:
        if own:
            fh.close()


def read_graphs(source) -> list[StrandedGraph]:
    out = []
    for lineno, doc in iter_documents(source):
        try:
            out.append(doc_to_graph(doc))
        except GraphDocumentError as exc:
            raise GraphDocumentError(exc.message, line=lineno, path=exc.path) from None
    return out


# --------------------------------------------------------------------------
# DOT

_SLOT_STYLE = ("solid", "dashed", "dotted", "bold")
_SLOT_COLOR = ("black", "red", "blue", "darkgreen")


def to_dot(graph: StrandedGraph, detail: str = RIBBON) -> str:
    """Deterministic DOT text; edges point from the MINUS end to the PLUS end."""
    if detail not in (RIBBON, STRAND):
        raise ValueError(f"detail must be {RIBBON!r} or {STRAND!r}")
    if detail == RIBBON:
        jacket(graph)  # refuses dimension 4
    name = "jacket" if detail == RIBBON else "strands"
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v, kind in enumerate(graph.vertex_kinds):
        lines.append(f'  v{v} [label="{v}\\n{kind.value}"];')
    for i, (v, c) in enumerate(graph.external_legs):
        lines.append(f"  x{i} [shape=point];")
    d = graph.dimension
    slots = (0, 2) if detail == RIBBON else range(d)
    for e in graph.edges:
        (v, a), (w, b) = e.ends
        if detail == RIBBON:
            lines.append(f'  v{v} -> v{w} [taillabel="{a}", headlabel="{b}"];')
        else:
            for s in slots:
                lines.append(f'  v{v} -> v{w} [taillabel="{a}.{s}", headlabel="{b}.{edge_slot(d, s)}", '
                             f'style={_SLOT_STYLE[s]}, color={_SLOT_COLOR[s]}];')
    for i, (v, c) in enumerate(graph.external_legs):
        if detail == RIBBON:
            lines.append(f'  v{v} -> x{i} [taillabel="{c}", arrowhead=none];')
        else:
            for s in slots:
                lines.append(f'  v{v} -> x{i} [taillabel="{c}.{s}", arrowhead=none, '
                             f'style={_SLOT_STYLE[s]}, color={_SLOT_COLOR[s]}];')
    if detail == STRAND:
        lines.append("  // internal strands: corner.slot -- corner.slot")
        for v, kind in enumerate(graph.vertex_kinds):
            pairs = sorted({tuple(sorted([(c, s), vertex_kernel(kind, c, s)]))
                            for c in range(kind.valence) for s in range(d)})
            text = " ".join(f"{a[0]}.{a[1]}-{b[0]}.{b[1]}" for a, b in pairs)
            lines.append(f"  // v{v}: {text}")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# count cache


class CacheConflictError(RuntimeError):
    pass


class CountCache:
    """Append-only JSON-lines store of count rows, stamped with the package version."""

    FILENAME = "counts.jsonl"

    def __init__(self, directory, version: str | None = None):
        from . import __version__

        self.dir = Path(directory)
        self.version = version or __version__
        self.path = self.dir / self.FILENAME

    def _entries(self):
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    yield json.loads(line)

    @staticmethod
    def _key(model, order, external, connectivity):
        return [model, order, external, connectivity]

    def get(self, model: str, order: int, external: int, connectivity: str) -> CountRow | None:
        key = self._key(model, order, external, connectivity)
        for entry in self._entries():
            if entry["version"] == self.version and entry["key"] == key:
                return CountRow(**entry["row"])
        return None

    def put(self, row: CountRow) -> None:
        existing = self.get(row.model, row.order, row.external, row.connectivity)
        if existing is not None:
            if existing != row:
                raise CacheConflictError(
                    f"cached row for {row.model} order {row.order} legs {row.external} differs")
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        entry = {
            "version": self.version,
            "key": self._key(row.model, row.order, row.external, row.connectivity),
            "row": {f: getattr(row, f) for f in CountRow.FIELDS},
        }
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, separators=(",", ":")) + "\n")
