"""Rotation-system plane graphs, subgraphs and boundary walks.

Vertex rotations are counterclockwise neighbor lists. Faces are traced with
the face on the left of every dart: the dart after ``u -> v`` is
``v -> pred_v(u)``, where ``pred_v`` steps one place clockwise in the rotation
of ``v``. All boundary walks keep the region D(S) of the subgraph on their
left, for the unbounded complement component as well as for holes.

A patch is a finite piece of an infinite tessellation. Vertices flagged
complete carry their full rotation; every other vertex sits on the rim and
lists only the neighbors present in the patch. Faces that are not tiles of
the tessellation (the outer face of a patch) are *void*.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx

from src.core.errors import (
    EmptyDual,
    InconsistentRotation,
    InvalidSubgraph,
    NonPlanar,
    ParallelEdge,
    SelfLoop,
    UnsafeSubgraph,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical (min, max) key of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Dart:
    """Directed half of an edge, leaving ``origin`` toward ``target``."""

    id: int
    origin: int
    target: int
    twin: int
    rot_index: int


class PlaneGraph:
    """Immutable rotation-system plane graph with traced faces.

    Build instances with :func:`build_plane_graph`; the constructor trusts its
    arguments.
    """

    def __init__(
        self,
        rotations: Sequence[Sequence[int]],
        complete: Sequence[bool],
        outer_darts: Optional[Iterable[Edge]] = None,
        meta: Optional[dict] = None,
    ):
        self._rot: list[tuple[int, ...]] = [tuple(r) for r in rotations]
        self._complete: list[bool] = [bool(c) for c in complete]
        self.meta: dict = dict(meta or {})

        self._pos: list[dict[int, int]] = [
            {u: i for i, u in enumerate(r)} for r in self._rot
        ]
        self._base: list[int] = []
        origin: list[int] = []
        target: list[int] = []
        for v, rot in enumerate(self._rot):
            self._base.append(len(origin))
            for u in rot:
                origin.append(v)
                target.append(u)
        self._origin = origin
        self._target = target
        self._twin = [self.dart_id(target[d], origin[d]) for d in range(len(origin))]

        self._face_of: list[int] = [-1] * len(origin)
        faces: list[tuple[int, ...]] = []
        for d in range(len(origin)):
            if self._face_of[d] != -1:
                continue
            cycle = []
            cur = d
            while self._face_of[cur] == -1:
                self._face_of[cur] = len(faces)
                cycle.append(cur)
                cur = self._next_dart(cur)
            faces.append(tuple(cycle))
        self._faces = faces

        voids: set[int] = set()
        if outer_darts is not None:
            for u, v in outer_darts:
                voids.add(self._face_of[self.dart_id(u, v)])
        elif not all(self._complete):
            voids.add(self._default_outer())
        self._voids = frozenset(voids)
        self.outer: Optional[int] = min(voids) if voids else None
        self._safe_height: Optional[int] = None

    # -- construction helpers -------------------------------------------------

    def _next_dart(self, d: int) -> int:
        u, v = self._origin[d], self._target[d]
        return self.dart_id(v, self.pred(v, u))

    def _default_outer(self) -> int:
        rim = {v for v, c in enumerate(self._complete) if not c}
        candidates = [
            f for f, darts in enumerate(self._faces)
            if rim <= {self._origin[d] for d in darts}
        ]
        if not candidates:
            raise NonPlanar("no face contains every incomplete vertex; designate the outer face")
        return min(candidates, key=lambda f: (-len(self._faces[f]), f))

    # -- vertices -------------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self._rot)

    def vertices(self) -> range:
        return range(len(self._rot))

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def is_complete(self, v: int) -> bool:
        return self._complete[v]

    def complete_vertices(self) -> list[int]:
        return [v for v, c in enumerate(self._complete) if c]

    @property
    def is_closed(self) -> bool:
        return all(self._complete) and not self._voids

    def succ(self, v: int, u: int) -> int:
        """Neighbor following ``u`` counterclockwise around ``v``."""
        rot = self._rot[v]
        return rot[(self._pos[v][u] + 1) % len(rot)]

    def pred(self, v: int, u: int) -> int:
        """Neighbor preceding ``u`` counterclockwise around ``v``."""
        rot = self._rot[v]
        return rot[(self._pos[v][u] - 1) % len(rot)]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    # -- edges and darts ------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return len(self._origin)

    @property
    def num_edges(self) -> int:
        return len(self._origin) // 2

    def edges(self) -> list[Edge]:
        return [
            (self._origin[d], self._target[d])
            for d in range(len(self._origin))
            if self._origin[d] < self._target[d]
        ]

    def dart_id(self, u: int, v: int) -> int:
        try:
            return self._base[u] + self._pos[u][v]
        except (KeyError, IndexError):
            raise InconsistentRotation(f"no dart {u} -> {v}") from None

    def dart(self, d: int) -> Dart:
        v = self._origin[d]
        return Dart(
            id=d,
            origin=v,
            target=self._target[d],
            twin=self._twin[d],
            rot_index=d - self._base[v],
        )

    def origin(self, d: int) -> int:
        return self._origin[d]

    def target(self, d: int) -> int:
        return self._target[d]

    def twin(self, d: int) -> int:
        return self._twin[d]

    def left_face(self, u: int, v: int) -> int:
        return self._face_of[self.dart_id(u, v)]

    def right_face(self, u: int, v: int) -> int:
        return self._face_of[self.dart_id(v, u)]

    def face_of_dart(self, d: int) -> int:
        return self._face_of[d]

    # -- faces ----------------------------------------------------------------

    @property
    def num_faces(self) -> int:
        """Number of traced faces, voids included."""
        return len(self._faces)

    def faces(self) -> range:
        return range(len(self._faces))

    def real_faces(self) -> list[int]:
        return [f for f in range(len(self._faces)) if f not in self._voids]

    def is_void(self, f: int) -> bool:
        return f in self._voids

    @property
    def voids(self) -> frozenset[int]:
        return self._voids

    def face_darts(self, f: int) -> tuple[int, ...]:
        return self._faces[f]

    def face_vertices(self, f: int) -> tuple[int, ...]:
        """Vertices of face ``f`` in counterclockwise order."""
        return tuple(self._origin[d] for d in self._faces[f])

    def face_degree(self, f: int) -> int:
        return len(self._faces[f])

    def face_edges(self, f: int) -> list[Edge]:
        return [edge_key(self._origin[d], self._target[d]) for d in self._faces[f]]

    def vertex_faces(self, v: int) -> list[int]:
        """Faces around ``v``: the face left of ``v -> a`` for each ``a`` in rotation order."""
        base = self._base[v]
        return [self._face_of[base + i] for i in range(len(self._rot[v]))]

    def face_is_complete(self, f: int) -> bool:
        return f not in self._voids and all(self._complete[v] for v in self.face_vertices(f))

    def face_from_cycle(self, cycle: Sequence[int]) -> int:
        """Face id for a vertex cycle given in either orientation."""
        if len(cycle) < 3:
            raise InvalidSubgraph(f"face cycle too short: {list(cycle)}")
        want = set(cycle)
        for u, v in ((cycle[0], cycle[1]), (cycle[1], cycle[0])):
            if not self.adjacent(u, v):
                break
            f = self.left_face(u, v)
            if f not in self._voids and set(self.face_vertices(f)) == want:
                return f
        raise InvalidSubgraph(f"no face with vertex cycle {list(cycle)}")

    # -- safe region ----------------------------------------------------------

    @property
    def root(self) -> int:
        return int(self.meta.get("root", 0))

    def distances(self, source: int, limit: Optional[int] = None) -> dict[int, int]:
        """Breadth-first distances from ``source``, optionally up to ``limit``."""
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if limit is not None and dist[v] >= limit:
                continue
            for u in self._rot[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    @property
    def safe_height(self) -> int:
        """Largest h such that every vertex within distance h of the root is complete."""
        if self._safe_height is None:
            dist = self.distances(self.root)
            rim = [d for v, d in dist.items() if not self._complete[v]]
            self._safe_height = (min(rim) - 1) if rim else max(dist.values())
        return self._safe_height

    # -- interop --------------------------------------------------------------

    def to_networkx(self, vertices: Optional[Iterable[int]] = None) -> nx.Graph:
        graph = nx.Graph()
        if vertices is None:
            graph.add_nodes_from(self.vertices())
            graph.add_edges_from(self.edges())
            return graph
        keep = set(vertices)
        graph.add_nodes_from(keep)
        graph.add_edges_from((u, v) for u, v in self.edges() if u in keep and v in keep)
        return graph

    def __repr__(self) -> str:
        return (
            f"PlaneGraph(|V|={self.num_vertices}, |E|={self.num_edges}, "
            f"|F|={len(self._faces) - len(self._voids)}, voids={len(self._voids)})"
        )


def build_plane_graph(
    rotations: Sequence[Sequence[int]],
    complete_flags: Optional[Sequence[bool]] = None,
    outer: Optional[Iterable[Edge]] = None,
    meta: Optional[dict] = None,
) -> PlaneGraph:
    """Validate rotations and build a :class:`PlaneGraph`.

    Args:
        rotations: Counterclockwise neighbor list per vertex id (ids are dense).
        complete_flags: Completeness per vertex; all True when omitted.
        outer: Darts ``(u, v)`` whose left face is a void. When omitted a patch
            gets the face containing all incomplete vertices and a closed graph
            gets none.
        meta: Generator parameters carried along unchanged.

    Returns:
        The traced graph.

    Raises:
        SelfLoop, ParallelEdge, InconsistentRotation, NonPlanar.
    """
    n = len(rotations)
    if complete_flags is None:
        complete_flags = [True] * n
    if len(complete_flags) != n:
        raise InconsistentRotation(
            f"{len(complete_flags)} completeness flags for {n} vertices"
        )
    for v, rot in enumerate(rotations):
        seen: set[int] = set()
        for u in rot:
            if u == v:
                raise SelfLoop(f"vertex {v} lists itself")
            if not 0 <= u < n:
                raise InconsistentRotation(f"vertex {v} lists unknown vertex {u}")
            if u in seen:
                raise ParallelEdge(f"vertex {v} lists {u} twice")
            seen.add(u)
    for v, rot in enumerate(rotations):
        for u in rot:
            if v not in rotations[u]:
                raise InconsistentRotation(f"{v} lists {u} but {u} does not list {v}")

    graph = PlaneGraph(rotations, complete_flags, outer, meta)

    components = nx.number_connected_components(graph.to_networkx()) if n else 0
    # an isolated vertex has no darts but still sees one face
    isolated = sum(1 for rot in rotations if not rot)
    euler = graph.num_vertices - graph.num_edges + graph.num_faces + isolated
    if euler != 2 * components:
        raise NonPlanar(
            f"|V| - |E| + |F| = {euler}, expected {2 * components} for "
            f"{components} component(s)"
        )
    for v in graph.complete_vertices():
        if any(graph.is_void(f) for f in graph.vertex_faces(v)):
            raise InconsistentRotation(f"complete vertex {v} touches a void face")
    return graph


def dual(g: PlaneGraph) -> PlaneGraph:
    """Dual graph over the tiles whose vertices are all complete.

    Tile ``f`` becomes dual vertex ``i`` in increasing tile-id order. A dual
    vertex is complete when every corner of its tile is a complete vertex
    surrounded only by kept tiles; those corners become the dual tiles.

    Raises:
        EmptyDual: No tile has all of its vertices complete.
    """
    kept = [f for f in g.real_faces() if g.face_is_complete(f)]
    if not kept:
        raise EmptyDual("no face of the patch has all of its vertices complete")
    index = {f: i for i, f in enumerate(kept)}
    good = {
        v for v in g.complete_vertices()
        if all(f in index for f in g.vertex_faces(v))
    }
    rotations: list[list[int]] = []
    complete: list[bool] = []
    outer: list[Edge] = []
    for f in kept:
        rot = []
        for d in g.face_darts(f):
            h = g.face_of_dart(g.twin(d))
            if h in index:
                rot.append(index[h])
                # the dual dart f -> h has the corner target(d) on its left
                if g.target(d) not in good:
                    outer.append((index[f], index[h]))
        rotations.append(rot)
        complete.append(all(v in good for v in g.face_vertices(f)))
    root_faces = [f for f in g.vertex_faces(g.root) if f in index] if g.num_vertices else []
    meta = {
        "kind": "dual",
        "p": g.meta.get("q"),
        "q": g.meta.get("p"),
        "root": index[root_faces[0]] if root_faces else 0,
    }
    return build_plane_graph(rotations, complete, outer=outer if not all(complete) else None,
                             meta=meta)


# -----------------------------------------------------------------------------
# Subgraphs
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgraph:
    """Closed vertex/edge/face triple over a host graph."""

    host: PlaneGraph = field(repr=False, compare=False)
    vset: frozenset[int]
    eset: frozenset[Edge]
    fset: frozenset[int]

    @classmethod
    def build(
        cls,
        host: PlaneGraph,
        vertices: Iterable[int] = (),
        edges: Iterable[Sequence[int]] = (),
        faces: Iterable[int] = (),
    ) -> "Subgraph":
        """Validate closure and return the subgraph."""
        vset = frozenset(vertices)
        eset = frozenset(edge_key(e[0], e[1]) for e in edges)
        fset = frozenset(faces)
        for v in vset:
            if not 0 <= v < host.num_vertices:
                raise InvalidSubgraph(f"unknown vertex {v}")
        for u, v in eset:
            if u not in vset or v not in vset:
                raise InvalidSubgraph(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            if not host.adjacent(u, v):
                raise InvalidSubgraph(f"({u}, {v}) is not an edge of the host")
        for f in fset:
            if not 0 <= f < host.num_faces or host.is_void(f):
                raise InvalidSubgraph(f"{f} is not a face of the host")
            for e in host.face_edges(f):
                if e not in eset:
                    raise InvalidSubgraph(f"face {f} has edge {e} outside the edge set")
        return cls(host, vset, eset, fset)

    @property
    def is_empty(self) -> bool:
        return not self.vset

    def face_degree_sum(self) -> int:
        return sum(self.host.face_degree(f) for f in self.fset)

    def vertex_degree_sum(self) -> int:
        return sum(self.host.degree(v) for v in self.vset)

    def components(self) -> list[set[int]]:
        graph = nx.Graph()
        graph.add_nodes_from(self.vset)
        graph.add_edges_from(self.eset)
        return [set(c) for c in nx.connected_components(graph)]

    def is_induced(self) -> bool:
        return self == induced_subgraph(self.host, self.vset)

    def __len__(self) -> int:
        return len(self.vset)


def empty_subgraph(host: PlaneGraph) -> Subgraph:
    return Subgraph(host, frozenset(), frozenset(), frozenset())


def induced_subgraph(host: PlaneGraph, vertices: Iterable[int]) -> Subgraph:
    """Subgraph with every edge and tile whose vertices all lie in ``vertices``."""
    vset = frozenset(vertices)
    eset = set()
    fset = set()
    for v in vset:
        for u in host.neighbors(v):
            if u in vset:
                eset.add(edge_key(u, v))
                f = host.left_face(v, u)
                if f not in fset and not host.is_void(f):
                    if all(w in vset for w in host.face_vertices(f)):
                        fset.add(f)
    return Subgraph(host, vset, frozenset(eset), frozenset(fset))


def face_graph(host: PlaneGraph, faces: Iterable[int]) -> Subgraph:
    """Subgraph made of the given tiles with their edges and vertices."""
    fset = frozenset(faces)
    vset: set[int] = set()
    eset: set[Edge] = set()
    for f in fset:
        vset.update(host.face_vertices(f))
        eset.update(host.face_edges(f))
    return Subgraph(host, frozenset(vset), frozenset(eset), fset)


def _require_complete(host: PlaneGraph, vertices: Iterable[int], what: str) -> None:
    bad = [v for v in vertices if not host.is_complete(v)]
    if bad:
        raise UnsafeSubgraph(f"{what} touches incomplete vertex {min(bad)}")


# -----------------------------------------------------------------------------
# Boundary walks
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryWalk:
    """Oriented cycles of a boundary; D(S) lies on the left of every dart.

    ``cycles`` holds closed vertex sequences ``(v0, ..., vn = v0)``; a cycle of
    length 0 is the one-element tuple ``(v0,)``.
    """

    host: PlaneGraph = field(repr=False, compare=False)
    kind: str
    cycles: tuple[tuple[int, ...], ...]
    empty_face_set: bool = False

    @property
    def length(self) -> int:
        return sum(len(c) - 1 for c in self.cycles)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for c in self.cycles for v in c)

    @property
    def is_simple_cycle(self) -> bool:
        """Single cycle of length at least 3 without repeated vertices."""
        if len(self.cycles) != 1:
            return False
        c = self.cycles[0]
        return len(c) >= 4 and len(set(c[:-1])) == len(c) - 1

    def corners(self, index: int) -> list[tuple[int, int, int]]:
        """Corners ``(v_k, v_{k-1}, v_{k+1})`` of cycle ``index``."""
        c = self.cycles[index]
        n = len(c) - 1
        return [(c[k], c[k - 1] if k else c[n - 1], c[k + 1]) for k in range(n)]


def _trace_cycles(
    host: PlaneGraph, darts: set[int], successor
) -> list[tuple[int, ...]]:
    cycles = []
    seen: set[int] = set()
    for d in sorted(darts):
        if d in seen:
            continue
        seq = []
        cur = d
        while cur not in seen:
            seen.add(cur)
            seq.append(host.origin(cur))
            cur = successor(cur)
        if cur != d:
            raise NonPlanar("boundary successor is not a permutation")
        seq.append(seq[0])
        cycles.append(tuple(seq))
    return cycles


def boundary_walk(s: Subgraph) -> BoundaryWalk:
    """Boundary walk bS of the region covered by ``s``.

    Raises:
        UnsafeSubgraph: ``s`` is empty or touches an incomplete vertex.
    """
    g = s.host
    if s.is_empty:
        raise UnsafeSubgraph("boundary walk of an empty subgraph")
    _require_complete(g, s.vset, "boundary walk")

    darts = set()
    touched: set[int] = set()
    for u, v in s.eset:
        touched.update((u, v))
        for a, b in ((u, v), (v, u)):
            if g.right_face(a, b) not in s.fset:
                darts.add(g.dart_id(a, b))

    def successor(d: int) -> int:
        u, v = g.origin(d), g.target(d)
        w = g.succ(v, u)
        while edge_key(v, w) not in s.eset:
            w = g.succ(v, w)
        return g.dart_id(v, w)

    cycles = _trace_cycles(g, darts, successor)
    cycles.extend((v,) for v in sorted(s.vset - touched))
    return BoundaryWalk(g, "outer", tuple(cycles))


def inner_boundary_walk(s: Subgraph) -> BoundaryWalk:
    """Inner boundary walk b_iS, traced on the face graph of ``s``.

    Faces meeting only at a vertex belong to different interior components,
    so a pinched hole joins the cycle of the component around it.
    """
    g = s.host
    if not s.fset:
        return BoundaryWalk(g, "inner", (), empty_face_set=True)
    s0 = face_graph(g, s.fset)
    _require_complete(g, s0.vset, "inner boundary walk")

    darts = set()
    for f in s0.fset:
        for d in g.face_darts(f):
            if g.face_of_dart(g.twin(d)) not in s0.fset:
                darts.add(d)

    def successor(d: int) -> int:
        u, v = g.origin(d), g.target(d)
        a = g.pred(v, u)
        while g.left_face(v, g.pred(v, a)) in s0.fset:
            a = g.pred(v, a)
        return g.dart_id(v, a)

    return BoundaryWalk(g, "inner", tuple(_trace_cycles(g, darts, successor)))


def outer_layer_walk(b: Subgraph) -> BoundaryWalk:
    """Reversed boundary of the induced complement of ``b``, one layer out.

    Its vertex set is V(b+) minus V(b); ``b`` lies on the left of every dart.

    Raises:
        UnsafeSubgraph: The layer leaves the complete region or does not exist.
    """
    g = b.host
    vb = b.vset
    _require_complete(g, vb, "layer walk")
    layer: set[int] = set()
    for v in vb:
        for f in g.vertex_faces(v):
            layer.update(w for w in g.face_vertices(f) if w not in vb)
    if not layer:
        raise UnsafeSubgraph("complement of the subgraph is empty within the patch")
    _require_complete(g, layer, "layer walk")

    darts = set()
    lonely = []
    for x in layer:
        outside = [y for y in g.neighbors(x) if y not in vb]
        if not outside:
            lonely.append(x)
        for y in outside:
            if any(w in vb for w in g.face_vertices(g.left_face(y, x))):
                darts.add(g.dart_id(y, x))

    def successor(d: int) -> int:
        y, x = g.origin(d), g.target(d)
        z = g.pred(x, y)
        while z in vb:
            z = g.pred(x, z)
        return g.dart_id(x, z)

    cycles = _trace_cycles(g, darts, successor)
    cycles.extend((x,) for x in sorted(lonely))
    return BoundaryWalk(g, "layer", tuple(cycles))


# -----------------------------------------------------------------------------
# Interior, closure, balls
# -----------------------------------------------------------------------------

def interior(s: Subgraph) -> Subgraph:
    """S- : induced subgraph on the vertices off the boundary walk."""
    if s.is_empty:
        return s
    inner = s.vset - boundary_walk(s).vertex_set
    return induced_subgraph(s.host, inner)


def interior_and_depth(s: Subgraph) -> tuple[Subgraph, int]:
    """Return S- and the depth of ``s``."""
    first = interior(s)
    depth = 0
    cur = first
    while not cur.is_empty:
        depth += 1
        cur = interior(cur)
    return first, depth


def face_closure(s: Subgraph) -> Subgraph:
    """S+ : face graph of every tile incident to a vertex of ``s``."""
    if s.is_empty:
        raise UnsafeSubgraph("face closure of an empty subgraph")
    g = s.host
    _require_complete(g, s.vset, "face closure")
    faces = {f for v in s.vset for f in g.vertex_faces(v)}
    return face_graph(g, faces)


def combinatorial_ball(g: PlaneGraph, v: int, n: int) -> Subgraph:
    """Induced subgraph on the vertices within distance ``n`` of ``v``."""
    dist = g.distances(v, limit=n)
    inside = [u for u, d in dist.items() if d <= n]
    _require_complete(g, inside, f"ball of radius {n}")
    return induced_subgraph(g, inside)


def edge_and_vertex_boundaries(s: Subgraph) -> tuple[frozenset[Edge], frozenset[int], frozenset[int]]:
    """Edge boundary, inner vertex boundary d0 and outer vertex boundary d1."""
    g = s.host
    _require_complete(g, s.vset, "vertex boundary")
    boundary = set()
    d0 = set()
    d1 = set()
    for v in s.vset:
        for u in g.neighbors(v):
            if u not in s.vset:
                boundary.add(edge_key(u, v))
                d0.add(v)
                d1.add(u)
    return frozenset(boundary), frozenset(d0), frozenset(d1)


def interior_components(s: Subgraph) -> list[frozenset[int]]:
    """Tiles of ``s`` grouped by shared edges (components of the interior of D(S))."""
    g = s.host
    adjacency = nx.Graph()
    adjacency.add_nodes_from(s.fset)
    for f in s.fset:
        for d in g.face_darts(f):
            h = g.face_of_dart(g.twin(d))
            if h in s.fset and h != f:
                adjacency.add_edge(f, h)
    comps = [frozenset(c) for c in nx.connected_components(adjacency)]
    return sorted(comps, key=min)


def euler_characteristics(s: Subgraph) -> tuple[int, int]:
    """(chi(S), chi of the interior of D(S))."""
    chi = len(s.vset) - len(s.eset) + len(s.fset)
    if not s.fset:
        return chi, 0
    g = s.host
    walk = inner_boundary_walk(s)
    comp_of = {}
    for i, comp in enumerate(interior_components(s)):
        for f in comp:
            comp_of[f] = i
    holes = [0] * len(set(comp_of.values()))
    for cycle in walk.cycles:
        holes[comp_of[g.left_face(cycle[0], cycle[1])]] += 1
    return chi, sum(2 - count for count in holes)


# -----------------------------------------------------------------------------
# Utilities
# -----------------------------------------------------------------------------

def fill_holes(s: Subgraph, limit: Optional[int] = None) -> Subgraph:
    """Induced subgraph on ``s`` plus every bounded component of its complement.

    A complement component is bounded when its search stays below ``limit``
    vertices and never reaches an incomplete vertex.
    """
    g = s.host
    limit = limit if limit is not None else max(16, len(s.vset) ** 2)
    filled = set(s.vset)
    seen: set[int] = set()
    for v in s.vset:
        for u in g.neighbors(v):
            if u in filled or u in seen:
                continue
            comp = {u}
            queue = deque([u])
            bounded = True
            while queue:
                x = queue.popleft()
                if not g.is_complete(x) or len(comp) > limit:
                    bounded = False
                    break
                for y in g.neighbors(x):
                    if y not in s.vset and y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            if bounded:
                filled |= comp
    return induced_subgraph(g, filled)


def random_subgraph(
    g: PlaneGraph, rng: random.Random, max_vertices: int, induced: bool = False
) -> Subgraph:
    """Seeded sample of a safe subgraph, possibly disconnected and non-induced."""
    pool = g.complete_vertices()
    if not pool:
        raise UnsafeSubgraph("patch has no complete vertex")
    pool_set = set(pool)

    def grow(start: int, size: int, taken: set[int]) -> set[int]:
        part = {start}
        frontier = [u for u in g.neighbors(start) if u in pool_set and u not in taken]
        while frontier and len(part) < size:
            u = frontier.pop(rng.randrange(len(frontier)))
            if u in part:
                continue
            part.add(u)
            frontier.extend(
                w for w in g.neighbors(u) if w in pool_set and w not in part and w not in taken
            )
        return part

    vset = grow(rng.choice(pool), rng.randint(1, max_vertices), set())
    if rng.random() < 0.2:
        rest = [v for v in pool if v not in vset]
        if rest:
            vset |= grow(rng.choice(rest), rng.randint(1, 3), vset)
    full = induced_subgraph(g, vset)
    if induced:
        return full
    eset = {e for e in full.eset if rng.random() < 0.85}
    fset = {
        f for f in full.fset
        if all(e in eset for e in g.face_edges(f)) and rng.random() < 0.85
    }
    return Subgraph(g, frozenset(vset), frozenset(eset), frozenset(fset))


def isomorphic(a: PlaneGraph, b: PlaneGraph,
               a_vertices: Optional[Iterable[int]] = None,
               b_vertices: Optional[Iterable[int]] = None) -> bool:
    """Abstract-graph isomorphism, optionally restricted to vertex subsets."""
    return nx.is_isomorphic(a.to_networkx(a_vertices), b.to_networkx(b_vertices))
