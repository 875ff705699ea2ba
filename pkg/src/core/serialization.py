"""tessera-graph-v1 documents, subgraph files and JSON reports.

A graph document lists every vertex with its counterclockwise rotation and
completeness flag::

    {"format": "tessera-graph-v1",
     "vertices": [{"id": 0, "rotation": [1, 2, 3], "complete": true}, ...],
     "meta": {"p": 7, "q": 3, "height": 4, "seed": 0,
              "root": 0, "outer": [[5, 4]], "kind": "regular"}}

``meta.outer`` lists one dart ``[u, v]`` per void face (the face on the left
of ``u -> v`` is not a tile). Without it the reader falls back to the face
holding every incomplete vertex.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

import numpy as np

from src.core.errors import FormatError
from src.core.exact import QuadraticSurd, fraction_to_dict
from src.core.graph import PlaneGraph, Subgraph, build_plane_graph, induced_subgraph

GRAPH_FORMAT = "tessera-graph-v1"

# computed properties worth keeping in reports
_REPORT_PROPERTIES = ("passed", "failed_hypotheses", "attains_bound")

PathLike = Union[str, Path]


# -----------------------------------------------------------------------------
# Graphs
# -----------------------------------------------------------------------------

def graph_to_dict(g: PlaneGraph) -> dict:
    """tessera-graph-v1 document for ``g``."""
    meta = to_jsonable({k: v for k, v in g.meta.items() if k != "outer"})
    meta["root"] = g.root
    meta["outer"] = [
        [g.origin(g.face_darts(f)[0]), g.target(g.face_darts(f)[0])]
        for f in sorted(g.voids) if g.face_darts(f)
    ]
    return {
        "format": GRAPH_FORMAT,
        "vertices": [
            {"id": v, "rotation": list(g.rotation(v)), "complete": g.is_complete(v)}
            for v in g.vertices()
        ],
        "meta": meta,
    }


def graph_from_dict(doc: Any) -> PlaneGraph:
    """Build a graph from a tessera-graph-v1 document.

    Raises:
        FormatError: The document is not a tessera-graph-v1 graph.
        TesseraError: The rotations do not describe a plane graph.
    """
    if not isinstance(doc, dict):
        raise FormatError("graph document must be a JSON object")
    if doc.get("format") != GRAPH_FORMAT:
        raise FormatError(f"expected format {GRAPH_FORMAT!r}, got {doc.get('format')!r}")
    entries = doc.get("vertices")
    if not isinstance(entries, list):
        raise FormatError("'vertices' must be a list")
    try:
        by_id = {int(e["id"]): e for e in entries}
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed vertex entry: {e}") from e
    if sorted(by_id) != list(range(len(entries))):
        raise FormatError("vertex ids must be unique and numbered 0..n-1")
    try:
        rotations = [[int(u) for u in by_id[v]["rotation"]] for v in range(len(entries))]
        complete = [bool(by_id[v].get("complete", True)) for v in range(len(entries))]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed rotation: {e}") from e

    meta = dict(doc.get("meta") or {})
    outer = meta.pop("outer", None)
    if outer is not None:
        try:
            outer = [(int(u), int(v)) for u, v in outer]
        except (TypeError, ValueError) as e:
            raise FormatError(f"'meta.outer' must list darts [u, v]: {e}") from e
        for u, v in outer:
            if not (0 <= u < len(rotations) and v in rotations[u]):
                raise FormatError(f"outer dart ({u}, {v}) is not a dart of the graph")
    return build_plane_graph(rotations, complete, outer=outer, meta=meta)


def dumps_graph(g: PlaneGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2, sort_keys=True) + "\n"


def loads_graph(text: str) -> PlaneGraph:
    return graph_from_dict(_parse(text))


def write_graph(g: PlaneGraph, path: PathLike) -> None:
    Path(path).write_text(dumps_graph(g), encoding="utf-8")


def read_graph(path: PathLike) -> PlaneGraph:
    return loads_graph(_read(path))


# -----------------------------------------------------------------------------
# Subgraphs
# -----------------------------------------------------------------------------

def subgraph_to_dict(s: Subgraph) -> dict:
    """Vertices and edges sorted, faces as their vertex cycles."""
    return {
        "vertices": sorted(s.vset),
        "edges": [list(e) for e in sorted(s.eset)],
        "faces": [list(s.host.face_vertices(f)) for f in sorted(s.fset)],
    }


def _face_id(g: PlaneGraph, entry: Any) -> int:
    if isinstance(entry, int):
        return entry
    if isinstance(entry, list):
        return g.face_from_cycle([int(v) for v in entry])
    raise FormatError(f"face entry must be an id or a vertex cycle, got {entry!r}")


def subgraph_from_dict(g: PlaneGraph, doc: Any) -> Subgraph:
    """Subgraph of ``g`` from ``{"vertices", "edges", "faces"}``.

    A document carrying only ``vertices`` describes the induced subgraph.

    Raises:
        FormatError: The document is malformed.
        InvalidSubgraph: The triple is not closed in ``g``.
    """
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise FormatError("subgraph document must be an object with 'vertices'")
    try:
        vertices = [int(v) for v in doc["vertices"]]
        if "edges" not in doc and "faces" not in doc:
            return induced_subgraph(g, vertices)
        edges = [(int(u), int(v)) for u, v in doc.get("edges", [])]
    except (TypeError, ValueError) as e:
        raise FormatError(f"malformed subgraph: {e}") from e
    faces = [_face_id(g, f) for f in doc.get("faces", [])]
    return Subgraph.build(g, vertices, edges, faces)


def write_subgraph(s: Subgraph, path: PathLike) -> None:
    Path(path).write_text(json.dumps(subgraph_to_dict(s), indent=2) + "\n", encoding="utf-8")


def read_subgraph(g: PlaneGraph, path: PathLike) -> Subgraph:
    return subgraph_from_dict(g, _parse(_read(path)))


# -----------------------------------------------------------------------------
# Reports
# -----------------------------------------------------------------------------

def to_jsonable(obj: Any) -> Any:
    """Plain JSON structure with exact scalars spelled out.

    Fractions become ``{"numerator", "denominator"}``, surds their
    ``to_dict()``, sets sorted lists and dataclasses objects of their fields
    (host graphs are left out, subgraphs written as in subgraph files).
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return fraction_to_dict(obj)
    if isinstance(obj, QuadraticSurd):
        return obj.to_dict()
    if isinstance(obj, float):
        return obj
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Subgraph):
        return subgraph_to_dict(obj)
    if isinstance(obj, PlaneGraph):
        return graph_to_dict(obj)
    if hasattr(obj, "as_surd"):
        return to_jsonable(obj.as_surd())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for f in dataclasses.fields(obj):
            value = getattr(obj, f.name)
            if not f.repr and not isinstance(value, Subgraph):
                continue
            out[f.name] = to_jsonable(value)
        for name in _REPORT_PROPERTIES:
            if isinstance(getattr(type(obj), name, None), property):
                out[name] = to_jsonable(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items, key=lambda x: json.dumps(x, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise FormatError(f"cannot serialize {type(obj).__name__}")


def dumps_report(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------

def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e


def _parse(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from e
