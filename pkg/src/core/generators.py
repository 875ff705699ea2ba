"""Patch generators: platonic solids, regular tilings, perturbed tilings.

Non-spherical patches are grown one face-closure layer at a time. Every
boundary vertex of the current disk receives the outward edges it still
needs ("spokes"); the wedge between two consecutive spokes becomes a new tile
whose outer side is a path of fresh vertices. A tile spanning ``q - 1``
boundary vertices closes with a single fresh vertex, so the endpoints of its
two spokes coincide.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from src.core.errors import DegreeTooSmall, InfeasibleSpec, NonPlanar
from src.core.graph import PlaneGraph, build_plane_graph, edge_key

PLATONIC = {
    (3, 3): "tetrahedron",
    (3, 4): "cube",
    (4, 3): "octahedron",
    (3, 5): "dodecahedron",
    (5, 3): "icosahedron",
}


@dataclass(frozen=True)
class PatchSpec:
    """Degree bounds and growth parameters of a generated patch."""

    p_min: int
    p_max: int
    q_min: int
    q_max: int
    height: int
    seed: int = 0
    kind: str = "perturbed"
    core: str = "face"

    def __post_init__(self):
        if min(self.p_min, self.q_min) < 3:
            raise DegreeTooSmall("vertex and face degrees must be at least 3")
        if self.p_min > self.p_max or self.q_min > self.q_max:
            raise InfeasibleSpec("degree ranges are empty")
        if self.kind == "regular" and (self.p_min != self.p_max or self.q_min != self.q_max):
            raise InfeasibleSpec("regular patches need a single vertex and face degree")


@dataclass
class LayerRecord:
    """Counts of one quasi-ball layer of a generated patch."""

    height: int
    vertices: int
    faces: int
    boundary: int
    face_degree_sum: int
    spokes: Optional[int] = None


def is_spherical(p: int, q: int) -> bool:
    return Fraction(1, p) + Fraction(1, q) > Fraction(1, 2)


# -----------------------------------------------------------------------------
# Platonic solids
# -----------------------------------------------------------------------------

_PHI = (1 + math.sqrt(5)) / 2


def _solid_coordinates(name: str) -> np.ndarray:
    if name == "tetrahedron":
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif name == "cube":
        pts = list(itertools.product((-1, 1), repeat=3))
    elif name == "octahedron":
        pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    elif name == "icosahedron":
        pts = []
        for s1, s2 in itertools.product((-1, 1), repeat=2):
            pts += [(0, s1, s2 * _PHI), (s1, s2 * _PHI, 0), (s2 * _PHI, 0, s1)]
    elif name == "dodecahedron":
        pts = list(itertools.product((-1, 1), repeat=3))
        for s1, s2 in itertools.product((-1, 1), repeat=2):
            pts += [(0, s1 / _PHI, s2 * _PHI), (s1 / _PHI, s2 * _PHI, 0), (s2 * _PHI, 0, s1 / _PHI)]
    else:
        raise ValueError(f"unknown platonic solid {name!r}")
    return np.array(pts, dtype=float)


def platonic_solid(name: str) -> PlaneGraph:
    """Closed plane graph of a platonic solid.

    Edges join nearest vertex pairs; rotations are counterclockwise as seen
    from outside the solid.
    """
    pts = _solid_coordinates(name)
    n = len(pts)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    shortest = dist[dist > 1e-9].min()
    rotations = []
    for v in range(n):
        nbrs = [u for u in range(n) if u != v and abs(dist[v, u] - shortest) < 1e-6]
        normal = pts[v] / np.linalg.norm(pts[v])
        e1 = pts[nbrs[0]] - pts[v]
        e1 -= normal * e1.dot(normal)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        angle = {u: math.atan2((pts[u] - pts[v]).dot(e2), (pts[u] - pts[v]).dot(e1)) for u in nbrs}
        rotations.append(sorted(nbrs, key=lambda u: angle[u]))
    q_of = {"tetrahedron": 3, "cube": 4, "octahedron": 3, "dodecahedron": 5, "icosahedron": 3}
    meta = {
        "kind": "platonic",
        "name": name,
        "p": len(rotations[0]),
        "q": q_of[name],
        "height": 0,
        "seed": 0,
        "root": 0,
    }
    return _relabel(build_plane_graph(rotations, meta=meta))


# -----------------------------------------------------------------------------
# Layer growth
# -----------------------------------------------------------------------------

class _Grower:
    """Grows a disk of tiles layer by layer.

    ``vertex_degree(v, k)`` returns the final degree of boundary vertex ``v``
    currently lying on ``k`` tiles; ``face_degree(L)`` returns the degree of a
    new tile that spans ``L`` boundary vertices.
    """

    def __init__(
        self,
        vertex_degree: Callable[[int, int], int],
        face_degree: Callable[[int], int],
    ):
        self.vertex_degree = vertex_degree
        self.face_degree = face_degree
        self.faces: list[list[int]] = []
        self.tiles_at: list[int] = []
        self.boundary: list[int] = []
        self.records: list[LayerRecord] = []

    def _new_vertex(self) -> int:
        self.tiles_at.append(0)
        return len(self.tiles_at) - 1

    def _add_face(self, cycle: list[int]) -> None:
        self.faces.append(cycle)
        for v in cycle:
            self.tiles_at[v] += 1

    def _record(self, spokes: Optional[int] = None) -> None:
        if self.records and spokes is not None:
            self.records[-1].spokes = spokes
        self.records.append(LayerRecord(
            height=len(self.records),
            vertices=len(self.tiles_at),
            faces=len(self.faces),
            boundary=len(self.boundary),
            face_degree_sum=sum(len(f) for f in self.faces),
        ))

    def start_face(self) -> None:
        q = self.face_degree(0)
        cycle = [self._new_vertex() for _ in range(q)]
        self._add_face(cycle)
        self.boundary = list(cycle)
        self._record()

    def start_vertex(self) -> None:
        self.boundary = [self._new_vertex()]
        self._record()

    def grow(self) -> None:
        m = len(self.boundary)
        if m == 1:
            v = self.boundary[0]
            spokes = [0] * self.vertex_degree(v, 0)
        else:
            spokes = []
            for i, v in enumerate(self.boundary):
                k = self.tiles_at[v]
                r = self.vertex_degree(v, k) - k - 1
                if r < 0:
                    raise InfeasibleSpec(f"boundary vertex {v} already exceeds its degree")
                spokes.extend([i] * r)
        total = len(spokes)
        if total < 2:
            raise NonPlanar("layer growth needs at least two outward edges")

        # Wedge j lies between spoke j and spoke j + 1.
        spans = []
        for j in range(total):
            a, b = spokes[j], spokes[(j + 1) % total]
            diff = (b - a) % m if m > 1 else 0
            if diff == 0 and j == total - 1 and spokes[0] == spokes[-1] and m > 1:
                diff = m
            span = diff + 1
            q = self.face_degree(span)
            fresh = q - span
            if fresh < 1:
                raise InfeasibleSpec(f"tile of degree {q} cannot span {span} boundary vertices")
            spans.append((a, b, span, fresh))

        # Endpoints of consecutive spokes merge when the wedge has one fresh vertex.
        parent = list(range(total))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j, (_, _, _, fresh) in enumerate(spans):
            if fresh == 1:
                parent[find(j)] = find((j + 1) % total)
        if len({find(j) for j in range(total)}) < 2 and all(s[3] == 1 for s in spans):
            raise NonPlanar("layer collapses to a single vertex")

        endpoint: dict[int, int] = {}

        def end(j: int) -> int:
            root = find(j % total)
            if root not in endpoint:
                endpoint[root] = self._new_vertex()
            return endpoint[root]

        new_boundary: list[int] = []
        for j, (a, b, span, fresh) in enumerate(spans):
            x = end(j)
            path = [x]
            if fresh >= 2:
                path += [self._new_vertex() for _ in range(fresh - 2)]
                path.append(end(j + 1))
            back = [self.boundary[(b - t) % m] for t in range(span - 1)] if m > 1 else []
            self._add_face([self.boundary[a]] + path + back)
            new_boundary.extend(path[:-1] if fresh >= 2 else [])
        if not new_boundary:
            raise NonPlanar("layer produced an empty boundary")
        self.boundary = new_boundary
        self._record(spokes=total)

    def rotations(self) -> list[list[int]]:
        """Counterclockwise rotations read off the tile cycles."""
        succ: list[dict[int, int]] = [dict() for _ in self.tiles_at]
        for cycle in self.faces:
            n = len(cycle)
            for i in range(n):
                u, v, w = cycle[i - 1], cycle[i], cycle[(i + 1) % n]
                succ[v][w] = u
        rotations = []
        for v, nxt in enumerate(succ):
            if not nxt:
                rotations.append([])
                continue
            targets = set(nxt.values())
            starts = [w for w in nxt if w not in targets]
            cur = starts[0] if starts else min(nxt)
            order = [cur]
            while cur in nxt and nxt[cur] != order[0]:
                cur = nxt[cur]
                order.append(cur)
            rotations.append(order)
        return rotations


def _grow_patch(grower: _Grower, height: int, core: str, meta: dict) -> PlaneGraph:
    if core == "face":
        grower.start_face()
    elif core == "vertex":
        grower.start_vertex()
    else:
        raise ValueError(f"unknown core {core!r}")
    for _ in range(height):
        grower.grow()
    rotations = grower.rotations()
    rim = set(grower.boundary)
    if len(grower.boundary) == 1 and not grower.faces:
        graph = build_plane_graph([[]], [False], outer=[], meta=meta)
        graph.meta["records"] = [r.__dict__ for r in grower.records]
        return graph
    complete = [v not in rim for v in range(len(rotations))]
    b = grower.boundary
    outer = [(b[1], b[0])]
    meta = dict(meta, root=0)
    graph = _relabel(build_plane_graph(rotations, complete, outer=outer, meta=meta))
    graph.meta["records"] = [r.__dict__ for r in grower.records]
    return graph


def regular_patch(p: int, q: int, height: int, core: str = "face") -> PlaneGraph:
    """Quasi-ball of height ``height`` in the (p, q)-regular tiling.

    Spherical parameters return the whole platonic solid.

    Args:
        p: Vertex degree.
        q: Face degree.
        height: Number of face-closure layers around the core.
        core: ``"face"`` (central tile) or ``"vertex"`` (central vertex).

    Raises:
        DegreeTooSmall: p or q below 3.
    """
    if p < 3 or q < 3:
        raise DegreeTooSmall(f"p={p}, q={q}: degrees must be at least 3")
    if is_spherical(p, q):
        return platonic_solid(PLATONIC[(p, q)])
    grower = _Grower(lambda v, k: p, lambda span: q)
    meta = {"kind": "regular", "p": p, "q": q, "height": height, "seed": 0, "core": core}
    graph = _grow_patch(grower, height, core, meta)
    _fill_last_spokes(graph, p)
    return graph


def custom_patch(
    vertex_degree: Callable[[int, int], int],
    face_degree: Callable[[int], int],
    height: int,
    core: str = "face",
    meta: Optional[dict] = None,
) -> PlaneGraph:
    """Patch grown with caller-supplied degree rules (see :class:`_Grower`)."""
    meta = dict(meta or {}, height=height, core=core)
    meta.setdefault("kind", "custom")
    return _grow_patch(_Grower(vertex_degree, face_degree), height, core, meta)


def _fill_last_spokes(graph: PlaneGraph, p: int) -> None:
    records = graph.meta.get("records") or []
    if records and records[-1].get("spokes") is None:
        rim = [v for v in graph.vertices() if not graph.is_complete(v)]
        records[-1]["spokes"] = sum(p - graph.degree(v) for v in rim)


def perturbed_patch(spec: PatchSpec) -> PlaneGraph:
    """Patch with vertex degrees in [p_min, p_max] and face degrees in [q_min, q_max].

    Each boundary vertex draws its final degree and each new tile draws its
    degree from the seeded stream when the layer is grown. Equal bounds
    reproduce :func:`regular_patch` exactly.

    Raises:
        InfeasibleSpec: Bounds are positively curved or no retry passes the audit.
    """
    if Fraction(1, spec.p_min) + Fraction(1, spec.q_min) > Fraction(1, 2):
        raise InfeasibleSpec(
            f"1/{spec.p_min} + 1/{spec.q_min} > 1/2: bounds admit no planar tiling"
        )
    rng = random.Random(spec.seed)
    last_error: Optional[Exception] = None
    for _attempt in range(8):
        chosen: dict[int, int] = {}

        def vertex_degree(v: int, k: int) -> int:
            if v not in chosen:
                low = max(spec.p_min, k + 1)
                if low > spec.p_max:
                    raise InfeasibleSpec(f"vertex on {k} tiles cannot have degree <= {spec.p_max}")
                chosen[v] = rng.randint(low, spec.p_max)
            return chosen[v]

        def face_degree(span: int) -> int:
            low = max(spec.q_min, span + 1)
            if low > spec.q_max:
                raise InfeasibleSpec(f"tile spanning {span} vertices exceeds degree {spec.q_max}")
            return rng.randint(low, spec.q_max)

        meta = {
            "kind": "perturbed" if spec.kind != "regular" else "regular",
            "p": spec.p_min,
            "q": spec.q_min,
            "p_range": [spec.p_min, spec.p_max],
            "q_range": [spec.q_min, spec.q_max],
            "height": spec.height,
            "seed": spec.seed,
            "core": spec.core,
        }
        if spec.p_min == spec.p_max and spec.q_min == spec.q_max:
            meta["kind"] = "regular"
            del meta["p_range"], meta["q_range"]
        try:
            graph = _grow_patch(_Grower(vertex_degree, face_degree), spec.height, spec.core, meta)
        except (InfeasibleSpec, NonPlanar) as exc:
            last_error = exc
            continue
        problems = degree_audit(graph, spec.p_min, spec.p_max, spec.q_min, spec.q_max)
        problems += tessellation_audit(graph)
        if not problems:
            if meta["kind"] == "regular":
                _fill_last_spokes(graph, spec.p_min)
            return graph
        last_error = InfeasibleSpec("; ".join(problems[:3]))
    raise InfeasibleSpec(f"no valid patch after 8 attempts: {last_error}")


# -----------------------------------------------------------------------------
# Audits and labeling
# -----------------------------------------------------------------------------

def degree_audit(
    g: PlaneGraph,
    p_min: int,
    p_max: Optional[int] = None,
    q_min: int = 3,
    q_max: Optional[int] = None,
) -> list[str]:
    """Degree violations on the complete region; empty when the audit passes."""
    problems = []
    for v in g.complete_vertices():
        d = g.degree(v)
        if d < p_min or (p_max is not None and d > p_max):
            problems.append(f"vertex {v} has degree {d}")
    for f in g.real_faces():
        if not g.face_is_complete(f):
            continue
        d = g.face_degree(f)
        if d < q_min or (q_max is not None and d > q_max):
            problems.append(f"face {f} has degree {d}")
    return problems


def tessellation_audit(g: PlaneGraph) -> list[str]:
    """Check that tiles at complete vertices meet in nothing, a vertex or an edge."""
    problems = []
    for v in g.complete_vertices():
        faces = g.vertex_faces(v)
        if len(set(faces)) != len(faces):
            problems.append(f"vertex {v} meets a tile twice")
        for u in g.neighbors(v):
            if g.left_face(v, u) == g.right_face(v, u):
                problems.append(f"edge {edge_key(u, v)} borders a single face")
        for f, h in itertools.combinations(set(faces), 2):
            common = set(g.face_vertices(f)) & set(g.face_vertices(h))
            if len(common) > 2:
                problems.append(f"faces {f} and {h} share {len(common)} vertices")
            elif len(common) == 2:
                a, b = common
                if not g.adjacent(a, b) or {g.left_face(a, b), g.right_face(a, b)} != {f, h}:
                    problems.append(f"faces {f} and {h} share two vertices but no edge")
    return problems


def _relabel(g: PlaneGraph) -> PlaneGraph:
    """Canonical breadth-first labeling from the root with rotation-order tie-breaking."""
    root = g.root
    order = [root]
    new = {root: 0}
    queue = deque([(root, None)])
    while queue:
        v, parent = queue.popleft()
        rot = g.rotation(v)
        if not rot:
            continue
        start = (rot.index(parent) + 1) if parent is not None else 0
        for i in range(len(rot)):
            u = rot[(start + i) % len(rot)]
            if u not in new:
                new[u] = len(order)
                order.append(u)
                queue.append((u, v))
    for v in g.vertices():
        if v not in new:
            new[v] = len(order)
            order.append(v)
    rotations = []
    complete = []
    for old in order:
        rot = [new[u] for u in g.rotation(old)]
        if rot:
            i = rot.index(min(rot))
            rot = rot[i:] + rot[:i]
        rotations.append(rot)
        complete.append(g.is_complete(old))
    outer = []
    for f in g.voids:
        d = g.face_darts(f)[0]
        outer.append((new[g.origin(d)], new[g.target(d)]))
    meta = dict(g.meta, root=0)
    return build_plane_graph(rotations, complete, outer=outer if g.voids else None, meta=meta)


# -----------------------------------------------------------------------------
# Exact layer counts
# -----------------------------------------------------------------------------

def layer_recurrence(p: int, q: int, height: int, core: str = "vertex") -> list[LayerRecord]:
    """Exact layer counts of quasi-balls in the (p, q)-regular tiling.

    Uses |V(bS+)| = |bS| - 2q*kappa(S) + 2q, which holds with equality for
    quasi-balls of regular tilings, so no graph is built.
    """
    if is_spherical(p, q):
        raise InfeasibleSpec("layer recurrence needs 1/p + 1/q <= 1/2")
    c = p * q - 2 * p - 2 * q
    if core == "vertex":
        V, s = 1, 0
        layers = [(V, s)]
        if height >= 1:
            s = p * (q - 2)
            V = 1 + s
            layers.append((V, s))
    else:
        V, s = q, q
        layers = [(V, s)]
    while len(layers) <= height:
        s = s + c * V + 2 * q
        V += s
        layers.append((V, s))
    records = []
    for h, (V, s) in enumerate(layers[: height + 1]):
        faces = 0 if (core == "vertex" and h == 0) else (2 * V - s - 2) // (q - 2)
        edges = (q * faces + s) // 2
        spokes = p * V - 2 * edges if not (core == "vertex" and h == 0) else p
        records.append(LayerRecord(h, V, faces, s, q * faces, spokes))
    return records


def growth_records(g: PlaneGraph) -> list[LayerRecord]:
    """Layer records stored by the generator, if any."""
    return [LayerRecord(**r) for r in g.meta.get("records", [])]
