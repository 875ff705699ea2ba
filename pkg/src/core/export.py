"""Render graphs as DOT, SVG or tessera-graph-v1 JSON.

The SVG drawing is a visual aid only, rendered with matplotlib. Vertices get
their direction from a Tutte embedding with the outer face pinned to the unit
circle and, on patches, their radius from the breadth-first layer k around
the root: the Poincare radius tanh(k * l / 2) of k edges of hyperbolic length
l on hyperbolic tilings, k / height on Euclidean ones, scaled so the last
layer sits just inside the unit circle. Closed graphs are drawn as their
Tutte embedding.
"""
from __future__ import annotations

import io
import math
from typing import Optional

import matplotlib
import numpy as np
from matplotlib.collections import LineCollection, PolyCollection
from matplotlib.figure import Figure
from matplotlib.patches import Circle

from src.core.errors import FormatError
from src.core.graph import PlaneGraph, Subgraph
from src.core.serialization import dumps_graph

EXPORT_FORMATS = ("dot", "svg", "json")

SVG_SIZE = 640
_DPI = 100
_VIEW = 1.05
_RIM = 0.95


# -----------------------------------------------------------------------------
# DOT
# -----------------------------------------------------------------------------

def to_dot(g: PlaneGraph, s: Optional[Subgraph] = None) -> str:
    """Abstract graph in DOT; subgraph vertices and edges drawn in red."""
    lines = ["graph tessera {"]
    params = ", ".join(f"{k}={g.meta[k]}" for k in ("kind", "p", "q", "height") if k in g.meta)
    if params:
        lines.append(f"  // {params}")
    lines.append("  node [shape=circle, width=0.2, fixedsize=true, fontsize=8];")
    for v in g.vertices():
        attrs = ["style=filled", "fillcolor=gray80"] if g.is_complete(v) else ["style=dashed"]
        if s is not None and v in s.vset:
            attrs.append("color=red")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges():
        if s is not None and (u, v) in s.eset:
            lines.append(f"  {u} -- {v} [color=red, penwidth=2];")
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -----------------------------------------------------------------------------
# Layout
# -----------------------------------------------------------------------------

def _pinned_cycle(g: PlaneGraph) -> list[int]:
    """Vertices of the void face, or of the largest face of a closed graph."""
    if g.outer is not None:
        face = g.outer
    else:
        candidates = [f for f in g.faces() if g.face_darts(f)]
        if not candidates:
            return []
        face = min(candidates, key=lambda f: (-g.face_degree(f), f))
    seen: list[int] = []
    for v in g.face_vertices(face):
        if v not in seen:
            seen.append(v)
    return seen


def tutte_layout(g: PlaneGraph) -> np.ndarray:
    """Barycentric positions with the outer face on the unit circle."""
    n = g.num_vertices
    pos = np.zeros((n, 2))
    cycle = _pinned_cycle(g)
    # the outer face lies on the left of its walk, so the walk runs clockwise
    for i, v in enumerate(cycle):
        theta = -2 * math.pi * i / len(cycle)
        pos[v] = (math.cos(theta), math.sin(theta))
    pinned = set(cycle)
    free = [v for v in g.vertices() if v not in pinned]
    if not free:
        return pos
    index = {v: i for i, v in enumerate(free)}
    lap = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for v in free:
        i = index[v]
        lap[i, i] = max(1, g.degree(v))
        for u in g.neighbors(v):
            if u in index:
                lap[i, index[u]] -= 1
            else:
                rhs[i] += pos[u]
    solution, *_ = np.linalg.lstsq(lap, rhs, rcond=None)
    pos[free] = solution
    return pos


def hyperbolic_edge_length(p: int, q: int) -> Optional[float]:
    """Edge length of the regular (p, q) tiling of the hyperbolic plane, or None."""
    if (p - 2) * (q - 2) <= 4:
        return None
    return 2 * math.acosh(math.cos(math.pi / q) / math.sin(math.pi / p))


def layout(g: PlaneGraph) -> np.ndarray:
    """Positions inside the unit disk, root at the center on patches."""
    base = tutte_layout(g)
    if g.outer is None or g.num_vertices < 2:
        return base
    dist = g.distances(g.root)
    height = max(dist.values())
    if height == 0:
        return base
    p, q = g.meta.get("p"), g.meta.get("q")
    edge = hyperbolic_edge_length(p, q) if isinstance(p, int) and isinstance(q, int) else None
    if edge is not None:
        outermost = math.tanh(height * edge / 2)

        def radius(k: int) -> float:
            return _RIM * math.tanh(k * edge / 2) / outermost
    else:
        def radius(k: int) -> float:
            return _RIM * k / height

    center = base[g.root]
    pos = base.copy()
    for v, k in dist.items():
        dx, dy = base[v] - center
        theta = math.atan2(dy, dx)
        pos[v] = (radius(k) * math.cos(theta), radius(k) * math.sin(theta))
    return pos


# -----------------------------------------------------------------------------
# SVG
# -----------------------------------------------------------------------------

def _is_hyperbolic(g: PlaneGraph) -> bool:
    p, q = g.meta.get("p"), g.meta.get("q")
    return isinstance(p, int) and isinstance(q, int) and hyperbolic_edge_length(p, q) is not None


def draw(g: PlaneGraph, s: Optional[Subgraph] = None, size: int = SVG_SIZE) -> Figure:
    """Straight-line drawing; subgraph tiles shaded, its edges and vertices red.

    Artists carry the gids ``disk``, ``tiles``, ``edges`` and ``vertices`` so
    the SVG groups can be found by id.
    """
    pos = layout(g)
    fig = Figure(figsize=(size / _DPI, size / _DPI), dpi=_DPI)
    ax = fig.add_axes((0, 0, 1, 1))
    ax.set_aspect("equal")
    ax.set_xlim(-_VIEW, _VIEW)
    ax.set_ylim(-_VIEW, _VIEW)
    ax.axis("off")

    if g.outer is not None and _is_hyperbolic(g):
        disk = Circle((0, 0), 1, fill=False, edgecolor="#999999", linewidth=0.8)
        disk.set_gid("disk")
        ax.add_patch(disk)

    if s is not None and s.fset:
        tiles = PolyCollection(
            [pos[list(g.face_vertices(f))] for f in sorted(s.fset)],
            facecolors="#ffbbdd", edgecolors="none",
        )
        tiles.set_gid("tiles")
        ax.add_collection(tiles)

    chosen = s.eset if s is not None else frozenset()
    edges = g.edges()
    lines = LineCollection(
        [pos[[u, v]] for u, v in edges],
        colors=["#cc0000" if e in chosen else "#333333" for e in edges],
        linewidths=[2.0 if e in chosen else 0.8 for e in edges],
    )
    lines.set_gid("edges")
    ax.add_collection(lines)

    fills = []
    for v in g.vertices():
        if s is not None and v in s.vset:
            fills.append("#cc0000")
        else:
            fills.append("#000000" if g.is_complete(v) else "#ffffff")
    dots = ax.scatter(pos[:, 0], pos[:, 1], s=6, c=fills, edgecolors="#000000", linewidths=0.5, zorder=3)
    dots.set_gid("vertices")
    return fig


def to_svg(g: PlaneGraph, s: Optional[Subgraph] = None, size: int = SVG_SIZE) -> str:
    """SVG text of :func:`draw`, reproducible for a given graph."""
    fig = draw(g, s, size)
    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "tessera", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def export(g: PlaneGraph, fmt: str, s: Optional[Subgraph] = None) -> str:
    """Render ``g`` in one of :data:`EXPORT_FORMATS`.

    Raises:
        FormatError: Unknown format.
    """
    if fmt == "dot":
        return to_dot(g, s)
    if fmt == "svg":
        return to_svg(g, s)
    if fmt == "json":
        return dumps_graph(g)
    raise FormatError(f"unknown export format {fmt!r}; expected one of {EXPORT_FORMATS}")
