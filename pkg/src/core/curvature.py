"""Combinatorial curvature, left turns and Gauss-Bonnet identities.

All values are exact ``Fraction`` objects. A corner ``(v, prev, nxt)`` of a
boundary walk sees the faces swept counterclockwise from ``prev`` to ``nxt``
on its right (the complement side) and the faces swept counterclockwise from
``nxt`` to ``prev`` on its left. When ``prev == nxt`` every face at ``v``
lies on both sides.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from src.core.errors import NotAdjacent, UnsafeVertex, WalkHostMismatch
from src.core.graph import (
    BoundaryWalk,
    PlaneGraph,
    Subgraph,
    boundary_walk,
    euler_characteristics,
    inner_boundary_walk,
    interior,
    outer_layer_walk,
)

HALF = Fraction(1, 2)

OUTER = "outer"
INNER = "inner"


def vertex_kappa(g: PlaneGraph, v: int) -> Fraction:
    """kappa(v) = 1 - deg v / 2 + sum over faces at v of 1 / deg f."""
    if not g.is_complete(v):
        raise UnsafeVertex(f"curvature of incomplete vertex {v}")
    total = 1 - Fraction(g.degree(v), 2)
    for f in g.vertex_faces(v):
        total += Fraction(1, g.face_degree(f))
    return total


def kappa(g: PlaneGraph, vs: Iterable[int]) -> Fraction:
    """Total curvature of a vertex set."""
    return sum((vertex_kappa(g, v) for v in vs), Fraction(0))


def total_curvature(g: PlaneGraph) -> Fraction:
    """Sum of kappa over a closed graph; equals its Euler characteristic 2."""
    return kappa(g, g.vertices())


def _corner_faces(g: PlaneGraph, v: int, start: int, stop: int) -> list[int]:
    """Faces swept counterclockwise at ``v`` from ``start`` up to ``stop``."""
    if start == stop:
        return g.vertex_faces(v)
    faces = []
    a = start
    while a != stop:
        faces.append(g.left_face(v, a))
        a = g.succ(v, a)
    return faces


def corner_turn(
    g: PlaneGraph, corner: tuple[int, int, int], side: str
) -> tuple[Fraction, int]:
    """Left turn of one corner and the number of faces on the chosen side.

    Args:
        g: Host graph.
        corner: ``(v_k, v_{k-1}, v_{k+1})``.
        side: ``"outer"`` for the outer turn, ``"inner"`` for the inner turn.
    """
    v, prev, nxt = corner
    if not g.is_complete(v):
        raise UnsafeVertex(f"corner at incomplete vertex {v}")
    if not (g.adjacent(v, prev) and g.adjacent(v, nxt)):
        raise NotAdjacent(f"corner {corner} does not follow edges")
    if side == OUTER:
        faces = _corner_faces(g, v, prev, nxt)
        turn = sum((HALF - Fraction(1, g.face_degree(f)) for f in faces), Fraction(0)) - HALF
    elif side == INNER:
        faces = _corner_faces(g, v, nxt, prev)
        turn = HALF - sum((HALF - Fraction(1, g.face_degree(f)) for f in faces), Fraction(0))
    else:
        raise ValueError(f"unknown side {side!r}")
    return turn, len(faces)


def corner_identity(g: PlaneGraph, corner: tuple[int, int, int]) -> bool:
    """inner turn - outer turn == kappa at a non-degenerate corner."""
    inner, _ = corner_turn(g, corner, INNER)
    outer, _ = corner_turn(g, corner, OUTER)
    return inner - outer == vertex_kappa(g, corner[0])


@dataclass(frozen=True)
class CornerTurn:
    vertex: int
    prev: Optional[int]
    next: Optional[int]
    faces: int
    value: Fraction
    edges: int


@dataclass
class TurnReport:
    """Per-corner and per-cycle turns of a boundary walk."""

    walk: BoundaryWalk = field(repr=False)
    side: str
    corners: list[CornerTurn]
    cycle_totals: list[Fraction]
    total: Fraction
    edge_count: int


def walk_turn(g: PlaneGraph, w: BoundaryWalk, side: str) -> TurnReport:
    """Total left turn of a walk with the inward or outward edge tally.

    Raises:
        WalkHostMismatch: ``w`` was traced on another graph.
    """
    if w.host is not g:
        raise WalkHostMismatch("boundary walk belongs to a different host graph")
    corners: list[CornerTurn] = []
    totals: list[Fraction] = []
    edges = 0
    for index, cycle in enumerate(w.cycles):
        if len(cycle) == 1:
            v0 = cycle[0]
            k = vertex_kappa(g, v0)
            if side == OUTER:
                value, extra = 1 - k, g.degree(v0)
            else:
                value, extra = k - 1, 0
            corners.append(CornerTurn(v0, None, None, g.degree(v0), value, extra))
            totals.append(value)
            edges += extra
            continue
        subtotal = Fraction(0)
        for corner in w.corners(index):
            value, faces = corner_turn(g, corner, side)
            corners.append(CornerTurn(corner[0], corner[1], corner[2], faces, value, faces - 1))
            subtotal += value
            edges += faces - 1
        totals.append(subtotal)
    return TurnReport(w, side, corners, totals, sum(totals, Fraction(0)), edges)


@dataclass
class GaussBonnetReport:
    variant: str
    lhs: Fraction
    rhs: Fraction
    passed: bool
    details: dict = field(default_factory=dict)


def gauss_bonnet_check(g: PlaneGraph, s: Optional[Subgraph], variant: str) -> GaussBonnetReport:
    """Evaluate both sides of a Gauss-Bonnet identity exactly.

    Variants:
        ``I``: kappa(S) + tau_o(bS) = chi(S).
        ``II``: kappa(S-) + tau_i(b_iS) = chi of the interior of D(S).
        ``complement``: kappa(B) + tau_i(b_1 B) = 2 - m', m' the number of
        layer cycles.
        ``basic``: kappa(G) = 2 on a closed graph (``s`` is ignored).
    """
    if variant == "basic":
        k = total_curvature(g)
        chi = g.num_vertices - g.num_edges + g.num_faces
        return GaussBonnetReport(variant, k, Fraction(chi), k == chi, {"kappa": k})
    if s is None:
        raise ValueError(f"variant {variant} needs a subgraph")
    if variant == "I":
        k = kappa(g, s.vset)
        turn = walk_turn(g, boundary_walk(s), OUTER)
        chi, _ = euler_characteristics(s)
        lhs = k + turn.total
        return GaussBonnetReport(variant, lhs, Fraction(chi), lhs == chi,
                                 {"kappa": k, "turn": turn})
    if variant == "II":
        inner_part = interior(s)
        k = kappa(g, inner_part.vset)
        turn = walk_turn(g, inner_boundary_walk(s), INNER)
        _, chi_open = euler_characteristics(s)
        lhs = k + turn.total
        return GaussBonnetReport(variant, lhs, Fraction(chi_open), lhs == chi_open,
                                 {"kappa": k, "turn": turn})
    if variant == "complement":
        k = kappa(g, s.vset)
        layer = outer_layer_walk(s)
        turn = walk_turn(g, layer, INNER)
        rhs = Fraction(2 - len(layer.cycles))
        lhs = k + turn.total
        return GaussBonnetReport(variant, lhs, rhs, lhs == rhs,
                                 {"kappa": k, "turn": turn, "cycles": len(layer.cycles)})
    raise ValueError(f"unknown Gauss-Bonnet variant {variant!r}")


def edge_counts(g: PlaneGraph, s: Subgraph) -> tuple[int, int]:
    """(inward edge count of b_iS, outward edge count of bS)."""
    inward = walk_turn(g, inner_boundary_walk(s), INNER).edge_count if s.fset else 0
    outward = walk_turn(g, boundary_walk(s), OUTER).edge_count
    return inward, outward
