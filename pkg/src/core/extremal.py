"""Extremal subgraphs: quasi-balls, puffed-balls, layer recurrences, Weil bounds.

Every check here constructs its witness and evaluates the stated
(in)equality exactly; a failed check is reported, never repaired.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import networkx as nx

from src.core.curvature import kappa
from src.core.errors import (
    DegreeAuditFailed,
    DegreeTooSmall,
    HypothesisViolation,
    NotTriangulation,
    ParabolicParameters,
    SphericalParameters,
    UnsafeSubgraph,
    UnsupportedQ,
)
from src.core.exact import QuadraticSurd
from src.core.generators import (
    custom_patch,
    degree_audit,
    layer_recurrence,
    regular_patch,
)
from src.core.graph import (
    PlaneGraph,
    Subgraph,
    boundary_walk,
    combinatorial_ball,
    face_closure,
    face_graph,
    induced_subgraph,
    inner_boundary_walk,
    interior,
    outer_layer_walk,
)
from src.core.isoperimetry import alpha, enumerate_connected_sets, growth_rate, search_region

WEIL_Q = (3, 4, 6)


# -----------------------------------------------------------------------------
# Quasi-balls and layer decompositions
# -----------------------------------------------------------------------------

def quasi_ball(g: PlaneGraph, core: Subgraph, n: int) -> Subgraph:
    """n-fold face closure of ``core``.

    Raises:
        UnsafeSubgraph: A closure step reaches an incomplete vertex.
    """
    cur = core
    for _ in range(n):
        cur = face_closure(cur)
    return cur


def layer_sizes(g: PlaneGraph, s: Subgraph) -> list[int]:
    """s_0..s_N with s_k = |V(bS_k)|, where S_N = s and S_{k-1} = S_k^-."""
    sizes = []
    cur = s
    while not cur.is_empty:
        sizes.append(len(boundary_walk(cur).vertex_set))
        cur = interior(cur)
    return sizes[::-1]


def quasi_ball_layers(g: PlaneGraph, core: Subgraph, n_max: int) -> list[int]:
    """b_0 = |V(core)| and b_n = |V(B_n)| - |V(B_{n-1})| for the quasi-balls of ``core``."""
    sizes = [len(core.vset)]
    cur = core
    for _ in range(n_max):
        nxt = face_closure(cur)
        sizes.append(len(nxt.vset) - len(cur.vset))
        cur = nxt
    return sizes


# -----------------------------------------------------------------------------
# Recurrences
# -----------------------------------------------------------------------------

@dataclass
class RecurrenceSeq:
    """Observed layer data set against its comparison sequence."""

    p: int
    q: int
    alpha: Optional[QuadraticSurd]
    t0: Optional[Fraction] = None
    terms: list[Fraction] = field(default_factory=list)
    observed: list[int] = field(default_factory=list)
    deltas: list[int] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def P(self) -> int:
        return self.p - 2

    @property
    def Q(self) -> int:
        return self.q - 2

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _affine_terms(c: int, q: int, n: int, first_offset: int) -> list[tuple[Fraction, Fraction]]:
    """Terms a_0..a_n as (constant, coefficient of t) with a_0 = t."""
    terms = [(Fraction(0), Fraction(1))]
    total = [Fraction(0), Fraction(1)]
    for k in range(1, n + 1):
        prev = terms[-1]
        extra = 2 * q + (first_offset if k == 1 else 0)
        term = (prev[0] + c * total[0] + extra, prev[1] + c * total[1])
        terms.append(term)
        total[0] += term[0]
        total[1] += term[1]
    return terms


def _solve_t0(c: int, q: int, target: int, n: int, first_offset: int) -> tuple[Fraction, list[Fraction]]:
    affine = _affine_terms(c, q, n, first_offset)
    const, coef = affine[-1]
    t0 = (target - const) / coef
    return t0, [a + b * t0 for a, b in affine]


def _hyperbolic_alpha(p: int, q: int) -> QuadraticSurd:
    if (p - 2) * (q - 2) == 4:
        raise ParabolicParameters(f"({p}, {q}) tiles the Euclidean plane")
    return alpha(p, q)


def solve_recurrence(p: int, q: int, s_observed: Sequence[int]) -> RecurrenceSeq:
    """Comparison sequence for the layers of a subgraph in a (>=p, >=q) tiling.

    a_0 = t0, a_1 = a_0 + c*a_0 + 2q - 1 and
    a_n = a_{n-1} + c*(a_0 + ... + a_{n-1}) + 2q with c = pq - 2p - 2q; t0 is
    the exact rational with a_N = s_N. The checks cover the three-term
    recurrence, s_0 <= a_0, the partial-sum domination and the telescoped
    bound sum_{k<N} a_k <= a_N / (alpha - 1).

    Raises:
        ParabolicParameters: (p-2)(q-2) = 4.
        SphericalParameters: (p-2)(q-2) < 4.
    """
    a = _hyperbolic_alpha(p, q)
    s = list(s_observed)
    if not s:
        raise ValueError("empty layer sequence")
    n = len(s) - 1
    c = p * q - 2 * p - 2 * q
    t0, terms = _solve_t0(c, q, s[-1], n, -1)
    pq2 = (p - 2) * (q - 2) - 2
    checks = {
        "recurrence": all(
            terms[k] - pq2 * terms[k - 1] + terms[k - 2] == 0 for k in range(3, n + 1)
        ),
        "start": s[0] <= t0,
        "domination": all(
            sum(s[: k + 1]) <= sum(terms[: k + 1]) for k in range(n)
        ),
    }
    if n >= 1:
        checks["telescoping"] = a - 1 > 0 and sum(terms[:n]) * (a - 1) <= terms[n]
    return RecurrenceSeq(p, q, a, t0, terms, s, [], checks)


def upper_recurrence(p: int, q: int, b_observed: Sequence[int]) -> RecurrenceSeq:
    """Comparison sequence for quasi-ball layers of a (<=p, <=q) tiling.

    Hyperbolic parameters use a_1 = a_0 + c*a_0 + 2q with a_N = b_N and check
    a_0 <= b_0, the partial-sum order and a_n >= alpha * a_{n-1}. Euclidean
    parameters check b_{n+1} <= b_n + 2q instead.
    """
    b = list(b_observed)
    pq = (p - 2) * (q - 2)
    if pq < 4:
        raise SphericalParameters(f"({p}, {q}) tiles the sphere")
    if pq == 4:
        steps = [b[k + 1] <= b[k] + 2 * q for k in range(len(b) - 1)]
        return RecurrenceSeq(p, q, None, None, [], b, [], {"euclidean_step": all(steps)})
    a = alpha(p, q)
    n = len(b) - 1
    c = p * q - 2 * p - 2 * q
    t0, terms = _solve_t0(c, q, b[-1], n, 0)
    checks = {
        "start": t0 <= b[0],
        "order": all(sum(terms[: k + 1]) <= sum(b[: k + 1]) for k in range(n)),
        "growth": all(a * terms[k - 1] <= terms[k] for k in range(1, n + 1)),
    }
    return RecurrenceSeq(p, q, a, t0, terms, b, [], checks)


def euclidean_layer_check(g: PlaneGraph, core: Subgraph, q: int, n_max: int) -> list[tuple[int, int, bool]]:
    """(n, b_n, b_{n+1} <= b_n + 2q) for quasi-balls of ``core``."""
    b = quasi_ball_layers(g, core, n_max)
    return [(k, b[k], b[k + 1] <= b[k] + 2 * q) for k in range(len(b) - 1)]


# -----------------------------------------------------------------------------
# Puffed-balls
# -----------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _triangulation(p: int, height: int) -> PlaneGraph:
    return regular_patch(p, 3, height, core="vertex")


def _host_height(p: int, n: int) -> int:
    height = 1
    while True:
        records = layer_recurrence(p, 3, height)
        if records[-1].vertices >= n:
            return height + 1
        height += 1


def puffed_order(p: int, n: int) -> tuple[PlaneGraph, list[int]]:
    """Host triangulation and the first ``n`` vertices in puffed-ball order.

    The center comes first, then its neighbors counterclockwise, then each
    sphere counterclockwise from a vertex with two parents whose predecessor
    has one.
    """
    if p < 6:
        raise DegreeTooSmall(f"puffed-balls need p >= 6, got {p}")
    g = _triangulation(p, _host_height(p, n))
    order = [0] + list(g.rotation(0))
    inside = set(order)
    while len(order) < n:
        walk = outer_layer_walk(induced_subgraph(g, inside))
        ring = list(walk.cycles[0][:-1])
        parents = {w: sum(1 for u in g.neighbors(w) if u in inside) for w in ring}
        start = next(
            (i for i in range(len(ring)) if parents[ring[i]] == 2 and parents[ring[i - 1]] == 1),
            0,
        )
        ring = ring[start:] + ring[:start]
        order.extend(ring)
        inside.update(ring)
    return g, order[:n]


def _boundary_lengths(g: PlaneGraph, order: Sequence[int]) -> list[int]:
    """|bP_k| for every prefix, using |bS| = 2|E(S)| - sum of face degrees."""
    inside: set[int] = set()
    edges = 0
    face_sum = 0
    out = []
    for w in order:
        inside.add(w)
        edges += sum(1 for u in g.neighbors(w) if u in inside)
        for f in set(g.vertex_faces(w)):
            if not g.is_void(f) and all(x in inside for x in g.face_vertices(f)):
                face_sum += g.face_degree(f)
        out.append(2 * edges - face_sum)
    return out


def puffed_ball(p: int, n: int) -> Subgraph:
    """Puffed-ball with ``n`` vertices in the p-regular triangulation."""
    g, order = puffed_order(p, n)
    return induced_subgraph(g, order)


def delta_sequence(p: int, n_max: int) -> RecurrenceSeq:
    """Boundary increments of consecutive puffed-balls, delta_1..delta_{n_max}."""
    g, order = puffed_order(p, n_max + 1)
    lengths = _boundary_lengths(g, order)
    deltas = [lengths[k + 1] - lengths[k] for k in range(n_max)]
    tail = deltas[1:]
    window = p + 1
    checks = {
        "first": bool(deltas) and deltas[0] == 2,
        "binary": all(d in (0, 1) for d in tail),
        "recurring": all(1 in tail[i:i + window] for i in range(max(0, len(tail) - window + 1))),
    }
    a = alpha(p, 3) if p > 6 else None
    return RecurrenceSeq(p, 3, a, None, [], lengths, deltas, checks)


# -----------------------------------------------------------------------------
# Weil bounds
# -----------------------------------------------------------------------------

@dataclass
class WeilReport:
    q: int
    n: int
    bound: int
    observed: int
    equality: bool

    @property
    def passed(self) -> bool:
        return self.observed <= self.bound


@dataclass
class Impossible:
    """No subgraph of the regular tiling attains the bound."""

    q: int
    n: int
    reason: str


@dataclass
class EqualityWitness:
    q: int
    n: int
    subgraph: Subgraph = field(repr=False)
    core: str
    report: WeilReport


def weil_bound(q: int, n: int) -> int:
    """Largest |V(S)| for |V(bS)| = n in a tiling with deg v >= 2q/(q-2), deg f >= q."""
    if q in (3, 4):
        return (n * n + 2 * q * n + 4 * q) // (4 * q)
    if q == 6:
        return (n * n + 12 * n + 36) // 24
    raise UnsupportedQ(f"q = {q}: Weil bounds exist for q in {WEIL_Q}")


def weil_p(q: int) -> int:
    if q not in WEIL_Q:
        raise UnsupportedQ(f"q = {q}: Weil bounds exist for q in {WEIL_Q}")
    return 2 * q // (q - 2)


def _audit_weil_host(g: PlaneGraph, q: int) -> None:
    problems = degree_audit(g, weil_p(q), None, q, None)
    if problems:
        raise DegreeAuditFailed("; ".join(problems[:5]))


def _weil_report(s: Subgraph, q: int) -> WeilReport:
    n = len(boundary_walk(s).vertex_set)
    bound = weil_bound(q, n)
    return WeilReport(q, n, bound, len(s.vset), len(s.vset) == bound)


def weil_verify(g: PlaneGraph, s: Subgraph, q: Optional[int] = None) -> WeilReport:
    """Compare |V(s)| with the bound for n = |V(bS)|.

    Raises:
        UnsupportedQ: q outside {3, 4, 6}.
        DegreeAuditFailed: The complete region has a vertex of degree below
            2q/(q-2) or a face of degree below q.
    """
    q = q if q is not None else int(g.meta.get("q", 0))
    _audit_weil_host(g, q)
    return _weil_report(s, q)


def weil_admissible(q: int, n: int) -> Optional[str]:
    """None when an equality subgraph exists, otherwise the violated condition."""
    weil_p(q)
    if n < 1:
        return "n must be positive"
    if q == 4 and n > 1 and n % 2:
        return "q = 4 needs n = 1 or n even"
    if q == 6:
        if n == 1:
            return "q = 6, n = 1: a single vertex has 1 < 2 vertices"
        if n % 2:
            return "q = 6 needs n even"
        if n % 12 in (4, 8):
            return f"q = 6 needs n not congruent to 4 or 8 mod 12 (n mod 12 = {n % 12})"
    return None


def _core(g: PlaneGraph, q: int, t: int) -> tuple[Subgraph, str]:
    v = g.root
    faces = g.vertex_faces(v)
    if t == 0:
        return Subgraph(g, frozenset((v,)), frozenset(), frozenset()), "vertex"
    if t == 2:
        u = g.rotation(v)[0]
        return induced_subgraph(g, (u, v)), "edge"
    if q == 3:
        count = {3: 1, 4: 2, 5: 3}[t]
        names = {1: "triangle", 2: "two triangles", 3: "three-triangle trapezoid"}
        return face_graph(g, faces[:count]), names[count]
    if q == 4:
        count = {4: 1, 6: 2}[t]
        return face_graph(g, faces[:count]), "square" if count == 1 else "two squares"
    count = {6: 1, 10: 2}[t]
    return face_graph(g, faces[:count]), "hexagon" if count == 1 else "two hexagons"


def equality_subgraph(q: int, n: int) -> Union[EqualityWitness, Impossible]:
    """Subgraph of the regular tiling attaining the Weil bound, or why none exists.

    The subgraph is the quasi-ball B_N(core) with N = n // 2q and the core
    chosen by t = n mod 2q. For q = 3 and n = 1 mod 6 (n > 1) the core is the
    vertex wheel plus the tile across its first boundary edge.
    """
    reason = weil_admissible(q, n)
    if reason is not None:
        return Impossible(q, n, reason)
    p = weil_p(q)
    big_n, t = divmod(n, 2 * q)
    g = regular_patch(p, q, big_n + 3, core="vertex")
    if t == 1 and n == 1:
        s = Subgraph(g, frozenset((g.root,)), frozenset(), frozenset())
        name = "vertex"
    elif t == 1:
        wheel = face_closure(Subgraph(g, frozenset((g.root,)), frozenset(), frozenset()))
        cycle = boundary_walk(wheel).cycles[0]
        extra = g.right_face(cycle[0], cycle[1])
        s = quasi_ball(g, face_graph(g, wheel.fset | {extra}), big_n - 1)
        name = "vertex wheel plus a triangle"
    else:
        core, name = _core(g, q, t)
        s = quasi_ball(g, core, big_n)
    report = weil_verify(g, s, q)
    return EqualityWitness(q, n, s, name, report)


@dataclass
class WeilSearchReport:
    q: int
    checked: int
    equalities: int
    violations: list[WeilReport]

    @property
    def passed(self) -> bool:
        return not self.violations


def weil_search(g: PlaneGraph, q: int, max_vertices: int, max_boundary: Optional[int] = None) -> WeilSearchReport:
    """Weil bound on every connected induced subgraph of the search region."""
    _audit_weil_host(g, q)
    pool = search_region(g)
    checked = 0
    equalities = 0
    violations = []
    for root in sorted(pool):
        for vs in enumerate_connected_sets(g, root, max_vertices, pool, root_is_minimum=True):
            s = induced_subgraph(g, vs)
            report = _weil_report(s, q)
            if max_boundary is not None and report.n > max_boundary:
                continue
            checked += 1
            equalities += report.equality
            if not report.passed:
                violations.append(report)
    return WeilSearchReport(q, checked, equalities, violations)


def wheel7() -> tuple[PlaneGraph, Subgraph]:
    """Seven triangles around a degree-7 vertex, inside a host triangulation."""
    g = regular_patch(7, 3, 2, core="vertex")
    return g, combinatorial_ball(g, g.root, 1)


# -----------------------------------------------------------------------------
# Layer identities
# -----------------------------------------------------------------------------

@dataclass
class CheckReport:
    """Both sides of an (in)equality plus the hypotheses that were tested."""

    name: str
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    passed: bool
    hypotheses: dict[str, bool] = field(default_factory=dict)

    @property
    def failed_hypotheses(self) -> list[str]:
        return [k for k, ok in self.hypotheses.items() if not ok]


def _directed_edges(cycles) -> set[tuple[int, int]]:
    return {(c[i], c[i + 1]) for c in cycles for i in range(len(c) - 1)}


def proposition_check(g: PlaneGraph, s: Subgraph, q: Optional[int] = None) -> CheckReport:
    """|V(bS+)| = |bS| - 2q * kappa(S) + 2q, with hypotheses (a)-(d) reported.

    Raises:
        UnsafeSubgraph: S+ or its boundary leaves the complete region.
    """
    q = q if q is not None else int(g.meta.get("q", 0))
    plus = face_closure(s)
    outer = boundary_walk(plus)
    inner = inner_boundary_walk(plus)
    walk = boundary_walk(s)
    back = interior(plus)
    hypotheses = {
        "closure_interior": (back.vset, back.eset, back.fset) == (s.vset, s.eset, s.fset),
        "edge_or_simple_cycle": (len(s.vset) == 2 and len(s.eset) == 1 and not s.fset)
        or walk.is_simple_cycle,
        "simple_outer_cycle": outer.is_simple_cycle
        and _directed_edges(outer.cycles) == _directed_edges(inner.cycles),
        "new_faces_degree_q": all(g.face_degree(f) == q for f in plus.fset - s.fset),
    }
    lhs = Fraction(len(outer.vertex_set))
    rhs = walk.length - 2 * q * kappa(g, s.vset) + 2 * q
    applicable = all(hypotheses.values())
    return CheckReport("proposition", lhs, rhs, applicable and lhs == rhs, hypotheses)


def complement_components(s: Subgraph) -> int:
    """Number of connected components of the complement of D(S) in the patch."""
    g = s.host
    comp = nx.Graph()
    for f in g.faces():
        if f not in s.fset:
            comp.add_node(("f", f))
    for v in g.vertices():
        if v in s.vset:
            continue
        comp.add_node(("v", v))
        for u in g.neighbors(v):
            comp.add_edge(("v", v), ("f", g.left_face(v, u)))
    for u, v in g.edges():
        if (u, v) in s.eset:
            continue
        node = ("e", u, v)
        comp.add_edge(node, ("f", g.left_face(u, v)))
        comp.add_edge(node, ("f", g.right_face(u, v)))
        for w in (u, v):
            if w not in s.vset:
                comp.add_edge(node, ("v", w))
    return nx.number_connected_components(comp)


def lemma_check(g: PlaneGraph, s: Subgraph, p: int, q: int) -> CheckReport:
    """|V(b_iS)| >= (pq - 2p - 2q)|V(S-)| + |V(bS-)| + 2q.

    The constant drops to 2q - 1 when S- is a single vertex.

    Raises:
        HypothesisViolation: Degree bounds fail, the complement of D(S) is
            disconnected, or S- is empty.
    """
    problems = degree_audit(g, p, None, q, None)
    if problems:
        raise HypothesisViolation(f"degree bounds: {problems[0]}")
    if complement_components(s) != 1:
        raise HypothesisViolation("complement of D(S) is disconnected")
    inner = interior(s)
    if inner.is_empty:
        raise HypothesisViolation("S- is empty")
    lhs = len(inner_boundary_walk(s).vertex_set)
    extra = 2 * q - 1 if len(inner.vset) == 1 else 2 * q
    rhs = (p * q - 2 * p - 2 * q) * len(inner.vset) + len(boundary_walk(inner).vertex_set) + extra
    return CheckReport("lemma", Fraction(lhs), Fraction(rhs), lhs >= rhs,
                       {"complement_connected": True, "interior_nonempty": True})


# -----------------------------------------------------------------------------
# Triangulations
# -----------------------------------------------------------------------------

@dataclass
class TransferReport:
    mode: str
    p: int
    vertices: int
    boundary_vertices: int
    boundary_length: int
    witness: Subgraph = field(repr=False)
    witness_vertices: int
    witness_boundary: int
    passed: bool


def _require_triangulation(t: PlaneGraph, p: int) -> None:
    bad = [f for f in t.real_faces() if t.face_degree(f) != 3]
    if bad:
        raise NotTriangulation(f"face {bad[0]} has degree {t.face_degree(bad[0])}")
    if not t.voids:
        raise NotTriangulation("triangulation has no boundary")
    problems = degree_audit(t, p)
    if problems:
        raise DegreeAuditFailed("; ".join(problems[:5]))


def transfer_triangulation(t: PlaneGraph, p: int, mode: str = "T4") -> TransferReport:
    """Match a finite triangulation with a puffed-ball of the p-regular one.

    ``T4``: the puffed-ball with |V(T)| vertices has |bP| <= |V(bT)|.
    ``T3``: advancing from there reaches a puffed-ball with |bP| = |bT| and
    at least |V(T)| vertices.

    Raises:
        NotTriangulation: A tile is not a triangle or there is no boundary.
        DegreeAuditFailed: An internal vertex has degree below p.
    """
    _require_triangulation(t, p)
    n = t.num_vertices
    rim = {v for f in t.voids for v in t.face_vertices(f)}
    rim_length = sum(t.face_degree(f) for f in t.voids)
    if mode == "T4":
        g, order = puffed_order(p, n)
        b = _boundary_lengths(g, order)[-1]
        witness = induced_subgraph(g, order)
        return TransferReport(mode, p, n, len(rim), rim_length, witness, n, b, b <= len(rim))
    if mode != "T3":
        raise ValueError(f"unknown transfer mode {mode!r}")
    cap = n + (rim_length + 1) * (p + 1)
    g, order = puffed_order(p, cap)
    lengths = _boundary_lengths(g, order)
    m = next((k + 1 for k in range(n - 1, cap) if lengths[k] == rim_length), None)
    if m is None:
        witness = induced_subgraph(g, order[:n])
        return TransferReport(mode, p, n, len(rim), rim_length, witness, n, lengths[n - 1], False)
    witness = induced_subgraph(g, order[:m])
    return TransferReport(mode, p, n, len(rim), rim_length, witness, m, lengths[m - 1], m >= n)


def triangulation_j1_bound(p: int) -> QuadraticSurd:
    """((p-6) + sqrt((p-2)(p-6))) / 2."""
    return QuadraticSurd(Fraction(p - 6, 2), Fraction(1, 2), (p - 2) * (p - 6))


def growth_lower_bound(c: float) -> float:
    """ln(((c-4) + sqrt((c-2)(c-6))) / 2) for an average degree c > 6."""
    return math.log(((c - 4) + math.sqrt((c - 2) * (c - 6))) / 2)


@dataclass
class J1Row:
    height: int
    vertices: int
    outer: int
    ratio: Fraction
    passed: bool
    extended: bool = False


@dataclass
class J1Report:
    p: int
    bound: QuadraticSurd
    rows: list[J1Row]
    relative_gap: Optional[float]
    average_degree: Optional[float] = None
    growth_bound: Optional[float] = None
    growth_estimate: Optional[float] = None
    growth_passed: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows) and self.growth_passed is not False


def _complete_radius(g: PlaneGraph, v0: int) -> tuple[dict[int, int], int]:
    dist = g.distances(v0)
    rim = [d for v, d in dist.items() if not g.is_complete(v)]
    return dist, (min(rim) - 1 if rim else max(dist.values()))


def triangulation_j1_bounds(g: PlaneGraph, p: int, height: int, tolerance: float = 0.1) -> J1Report:
    """Ball ratios |S_{h+1}| / |V(B_h)| against the sharp j1 bound.

    Heights beyond the complete region of a regular patch are taken from the
    exact layer recurrence and flagged ``extended``. The growth estimate is
    checked against the bound for the observed average degree, up to the
    relative ``tolerance``.

    Raises:
        NotTriangulation: A complete tile is not a triangle.
        DegreeAuditFailed: A complete vertex has degree below p.
    """
    bad = [f for f in g.real_faces() if g.face_is_complete(f) and g.face_degree(f) != 3]
    if bad:
        raise NotTriangulation(f"face {bad[0]} has degree {g.face_degree(bad[0])}")
    problems = degree_audit(g, p)
    if problems:
        raise DegreeAuditFailed("; ".join(problems[:5]))
    bound = triangulation_j1_bound(p)
    v0 = g.root
    dist, radius = _complete_radius(g, v0)
    counts: dict[int, int] = {}
    for d in dist.values():
        counts[d] = counts.get(d, 0) + 1

    rows = []
    size = 0
    degree_sum = 0
    averages = []
    for h in range(0, min(height, radius) + 1):
        size += counts.get(h, 0)
        degree_sum += sum(g.degree(v) for v, d in dist.items() if d == h)
        averages.append(degree_sum / size)
        if h >= 1:
            ratio = Fraction(counts.get(h + 1, 0), size)
            rows.append(J1Row(h, size, counts.get(h + 1, 0), ratio, bound <= ratio))
    regular = g.meta.get("kind") == "regular" and g.meta.get("p") == p and g.meta.get("q") == 3
    if height > radius and regular:
        records = layer_recurrence(p, 3, height + 1)
        for h in range(max(1, radius + 1), height + 1):
            vertices = records[h].vertices
            outer = records[h + 1].vertices - vertices
            ratio = Fraction(outer, vertices)
            rows.append(J1Row(h, vertices, outer, ratio, bound <= ratio, extended=True))

    gap = None
    if rows and p > 6:
        gap = (float(rows[-1].ratio) - float(bound)) / float(bound)
    report = J1Report(p, bound, rows, gap)

    tail = averages[len(averages) // 2:]
    if tail and radius >= 1:
        c = min(tail)
        report.average_degree = c
        if c > 6:
            estimate = growth_rate(g, v0, radius + 1).mu_hat
            report.growth_bound = growth_lower_bound(c)
            report.growth_estimate = estimate
            report.growth_passed = estimate >= report.growth_bound * (1 - tolerance)
    return report


@dataclass
class SphereStep:
    n: int
    observed: int
    predicted: int

    @property
    def passed(self) -> bool:
        return self.observed == self.predicted


def sphere_recurrence(g: PlaneGraph, v0: int, n_max: int) -> list[SphereStep]:
    """s_{n+1} = 6 + s_n + sum over B_n of (deg v - 6) for spheres around v0."""
    dist = g.distances(v0, limit=n_max)
    for v, d in dist.items():
        if d < n_max and not g.is_complete(v):
            raise UnsafeSubgraph(f"vertex {v} at distance {d} is incomplete")
    spheres: dict[int, list[int]] = {}
    for v, d in dist.items():
        spheres.setdefault(d, []).append(v)
    steps = []
    excess = 0
    for n in range(0, n_max):
        excess += sum(g.degree(v) - 6 for v in spheres.get(n, []))
        if n >= 1:
            s_n = len(spheres.get(n, []))
            steps.append(SphereStep(n, len(spheres.get(n + 1, [])), 6 + s_n + excess))
    return steps


# -----------------------------------------------------------------------------
# Worked example
# -----------------------------------------------------------------------------

@dataclass
class PentagonExample:
    """A pentagon in a (>=4, >=4) tiling and its one-layer closure."""

    graph: PlaneGraph = field(repr=False)
    pentagon: Subgraph = field(repr=False)
    closure: Subgraph = field(repr=False)
    corner_kappa: list[Fraction]
    boundary_vertices: int
    interior_vertices: int
    bound: int

    @property
    def attains_bound(self) -> bool:
        return self.interior_vertices + self.boundary_vertices == self.bound


def pentagon_example() -> PentagonExample:
    """Central pentagon among squares with all vertices of degree 4."""
    g = custom_patch(lambda v, k: 4, lambda span: 5 if span == 0 else 4, 2,
                     meta={"kind": "custom", "p": 4, "q": 4})
    f0 = next(f for f in g.real_faces() if g.face_degree(f) == 5)
    pentagon = face_graph(g, [f0])
    closure = face_closure(pentagon)
    n = len(boundary_walk(closure).vertex_set)
    corner = [kappa(g, [v]) for v in g.face_vertices(f0)]
    return PentagonExample(
        g, pentagon, closure, corner, n, len(closure.vset) - n, weil_bound(4, n)
    )
