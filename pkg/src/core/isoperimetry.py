"""Isoperimetric ratios, sharp constants and certified searches.

Sharp constants are quadratic surds; a rational ratio is compared with them
exactly through :class:`~src.core.exact.QuadraticSurd`, never through floats.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from src.core.errors import (
    DegreeAuditFailed,
    ParabolicParameters,
    RegionTooSmall,
    SphericalParameters,
    UnsafeSubgraph,
)
from src.core.exact import QuadraticSurd
from src.core.generators import degree_audit, is_spherical, layer_recurrence
from src.core.graph import (
    PlaneGraph,
    Subgraph,
    boundary_walk,
    edge_and_vertex_boundaries,
    face_closure,
    face_graph,
    fill_holes,
    induced_subgraph,
)

EDGE_VERTEX = "edge-vertex"
FACE_BOUNDARY = "face-boundary"
EDGE_SIGMA = "edge-sigma"
FACE_SIGMA = "face-sigma"
J0 = "j0"
J1 = "j1"
SELECTORS = (EDGE_VERTEX, FACE_BOUNDARY, EDGE_SIGMA, FACE_SIGMA, J0, J1)
FACE_SELECTORS = (FACE_BOUNDARY, FACE_SIGMA)

Scalar = Union[Fraction, QuadraticSurd]


# -----------------------------------------------------------------------------
# Sharp constants
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiValue:
    """(a-2) * sqrt(1 - 4 / ((a-2)(b-2))) held through its exact square."""

    p: int
    q: int
    square: Fraction
    approx: float

    def as_surd(self) -> QuadraticSurd:
        return QuadraticSurd.sqrt(self.square)

    def is_below(self, r: Fraction) -> bool:
        """True iff Phi <= r, decided by squaring."""
        return r >= 0 and r * r >= self.square


def phi(p: int, q: int) -> PhiValue:
    """Sharp isoperimetric constant Phi(p, q).

    Raises:
        SphericalParameters: 1/p + 1/q > 1/2.
    """
    if is_spherical(p, q):
        raise SphericalParameters(f"1/{p} + 1/{q} > 1/2")
    a, b = p - 2, q - 2
    square = Fraction(a * a) - Fraction(4 * a, b)
    return PhiValue(p, q, square, math.sqrt(square))


def phi_bounds(p: int, q: int) -> dict[str, QuadraticSurd]:
    """Constants for the four ratios in a (p, q) tessellation."""
    edge = phi(p, q).as_surd()
    face = phi(q, p).as_surd()
    return {
        EDGE_VERTEX: edge,
        FACE_BOUNDARY: face,
        EDGE_SIGMA: edge / p,
        FACE_SIGMA: face / q,
    }


def alpha(p: int, q: int) -> QuadraticSurd:
    """Growth root (PQ - 2 + sqrt((PQ - 2)^2 - 4)) / 2 with P = p-2, Q = q-2."""
    pq = (p - 2) * (q - 2)
    if pq == 4:
        raise ParabolicParameters(f"({p}, {q}) tiles the Euclidean plane")
    if pq < 4:
        raise SphericalParameters(f"({p}, {q}) tiles the sphere")
    return QuadraticSurd(Fraction(pq - 2, 2), Fraction(1, 2), (pq - 2) ** 2 - 4)


def upper_epsilon(p: int, q: int, face_degree_sum: int) -> QuadraticSurd:
    """Certified excess of a hole-filled quasi-ball over Phi(q, p)/q."""
    a = alpha(p, q)
    numerator = 4 * q * a / (a * a - 1) + 2 * (a - 1) / (a + 1)
    return numerator / face_degree_sum


def vertex_count_bound(p: int, q: int, boundary_vertices: int) -> QuadraticSurd:
    """alpha/(alpha-1) * |V(bS)|, bounding |V(S)| for induced S."""
    a = alpha(p, q)
    return a / (a - 1) * boundary_vertices


def vertex_constant_identity(j1: Scalar) -> Scalar:
    """j0 = j1 / (1 + j1)."""
    return j1 / (1 + j1)


# -----------------------------------------------------------------------------
# Ratios of one subgraph
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoRatios:
    i_edge: Fraction
    i_edge_sigma: Fraction
    j0: Fraction
    j1: Fraction
    i_face: Optional[Fraction] = None
    i_face_sigma: Optional[Fraction] = None

    def get(self, selector: str) -> Optional[Fraction]:
        return {
            EDGE_VERTEX: self.i_edge,
            FACE_BOUNDARY: self.i_face,
            EDGE_SIGMA: self.i_edge_sigma,
            FACE_SIGMA: self.i_face_sigma,
            J0: self.j0,
            J1: self.j1,
        }[selector]


def subgraph_ratios(g: PlaneGraph, s: Subgraph) -> IsoRatios:
    """All six ratios of ``s`` as exact rationals."""
    if s.is_empty:
        raise UnsafeSubgraph("ratios of an empty subgraph")
    boundary, d0, d1 = edge_and_vertex_boundaries(s)
    n = len(s.vset)
    i_face = i_face_sigma = None
    if s.fset:
        walk = boundary_walk(s).length
        i_face = Fraction(walk, len(s.fset))
        i_face_sigma = Fraction(walk, s.face_degree_sum())
    return IsoRatios(
        i_edge=Fraction(len(boundary), n),
        i_edge_sigma=Fraction(len(boundary), s.vertex_degree_sum()),
        j0=Fraction(len(d0), n),
        j1=Fraction(len(d1), n),
        i_face=i_face,
        i_face_sigma=i_face_sigma,
    )


# -----------------------------------------------------------------------------
# Enumeration
# -----------------------------------------------------------------------------

def _extend(adj, sub, ext, nbhd, k, allowed) -> Iterator[frozenset]:
    yield sub
    if len(sub) == k:
        return
    ext = list(ext)
    while ext:
        w = ext.pop()
        grown = ext + [u for u in adj[w] if allowed(u) and u not in nbhd]
        yield from _extend(adj, sub | {w}, grown, nbhd | set(adj[w]), k, allowed)


def _branches(adj, root: int, k: int, allowed) -> list[tuple]:
    ext0 = sorted(u for u in adj[root] if allowed(u))
    nbhd0 = frozenset(adj[root]) | {root}
    out = []
    if k < 2:
        return out
    for i in range(len(ext0)):
        w = ext0[len(ext0) - 1 - i]
        rest = ext0[: len(ext0) - 1 - i]
        ext = rest + [u for u in adj[w] if allowed(u) and u not in nbhd0]
        out.append((frozenset((root, w)), ext, nbhd0 | set(adj[w])))
    return out


def enumerate_connected_sets(
    g: PlaneGraph,
    root: int,
    max_size: int,
    pool: Optional[set[int]] = None,
    root_is_minimum: bool = False,
) -> Iterator[frozenset[int]]:
    """Every connected vertex set containing ``root`` once, up to ``max_size``.

    With ``root_is_minimum`` only sets whose smallest vertex is ``root`` are
    produced, so iterating over all roots covers each set exactly once.
    """
    pool = pool if pool is not None else set(g.vertices())
    adj = {v: g.neighbors(v) for v in pool}

    def allowed(u: int) -> bool:
        return u in pool and (not root_is_minimum or u > root)

    yield frozenset((root,))
    for sub, ext, nbhd in _branches(adj, root, max_size, allowed):
        yield from _extend(adj, sub, ext, nbhd, max_size, allowed)


def _set_ratios(g: PlaneGraph, vs: frozenset, which: Sequence[str]) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    n = len(vs)
    if any(sel not in FACE_SELECTORS for sel in which):
        deg_sum = 0
        inner = 0
        d0 = 0
        d1: set[int] = set()
        for v in vs:
            nbrs = g.neighbors(v)
            deg_sum += len(nbrs)
            outside = [u for u in nbrs if u not in vs]
            inner += len(nbrs) - len(outside)
            if outside:
                d0 += 1
                d1.update(outside)
        boundary = deg_sum - inner
        out[EDGE_VERTEX] = Fraction(boundary, n)
        out[EDGE_SIGMA] = Fraction(boundary, deg_sum)
        out[J0] = Fraction(d0, n)
        out[J1] = Fraction(len(d1), n)
    if any(sel in FACE_SELECTORS for sel in which):
        filled = fill_holes(induced_subgraph(g, vs))
        if filled.fset:
            s0 = face_graph(g, filled.fset)
            try:
                walk = boundary_walk(s0).length
            except UnsafeSubgraph:
                walk = None
            if walk is not None:
                out[FACE_BOUNDARY] = Fraction(walk, len(s0.fset))
                out[FACE_SIGMA] = Fraction(walk, s0.face_degree_sum())
    return {sel: out[sel] for sel in which if sel in out}


Best = dict[str, tuple[Fraction, tuple[int, ...]]]


def _merge(best: Best, other: Best) -> Best:
    for sel, cand in other.items():
        if sel not in best or cand < best[sel]:
            best[sel] = cand
    return best


def _scan(g: PlaneGraph, sets, which: Sequence[str]) -> tuple[Best, int]:
    best: Best = {}
    count = 0
    for vs in sets:
        count += 1
        key = tuple(sorted(vs))
        for sel, value in _set_ratios(g, vs, which).items():
            cand = (value, key)
            if sel not in best or cand < best[sel]:
                best[sel] = cand
    return best, count


_WORKER_GRAPH: Optional[PlaneGraph] = None


def _init_worker(g: PlaneGraph) -> None:
    global _WORKER_GRAPH
    _WORKER_GRAPH = g


def _scan_branch(task: tuple) -> tuple[Best, int]:
    g = _WORKER_GRAPH
    assert g is not None  # nosec B101
    sub, ext, nbhd, k, pool, root, minimum, which = task
    adj = {v: g.neighbors(v) for v in pool}

    def allowed(u: int) -> bool:
        return u in pool and (not minimum or u > root)

    return _scan(g, _extend(adj, sub, ext, nbhd, k, allowed), which)


@dataclass
class MinRatioResult:
    """Certified minimum of one ratio over the enumerated family."""

    selector: str
    minimum: Fraction
    witness: Subgraph = field(repr=False)
    enumerated: int
    certified_size: int
    family: str


def search_region(g: PlaneGraph) -> set[int]:
    """Complete vertices whose neighbors are complete as well."""
    return {
        v for v in g.complete_vertices()
        if all(g.is_complete(u) for u in g.neighbors(v))
    }


def _search_roots(g: PlaneGraph, pool: set[int]) -> tuple[list[int], bool]:
    if g.meta.get("kind") in ("regular", "platonic"):
        root = g.root if g.root in pool else min(pool)
        return [root], False
    return sorted(pool), True


def certified_depth(g: PlaneGraph, root: int, pool: set[int]) -> Optional[int]:
    """Distance from ``root`` to the nearest vertex outside ``pool``, or None.

    Every connected set of at most this many vertices through ``root`` lies in
    ``pool``.
    """
    outside = [d for v, d in g.distances(root).items() if v not in pool]
    return min(outside) if outside else None


def brute_force_min_ratios(
    g: PlaneGraph,
    max_vertices: int,
    which: Sequence[str] = SELECTORS,
    threads: int = 1,
) -> dict[str, MinRatioResult]:
    """Certified minima of several ratios over connected induced subgraphs.

    Regular patches are vertex-transitive, so sets through the root suffice;
    other patches enumerate every root of the search region. Face ratios are
    evaluated on the face graph of the hole-filled induced subgraph.

    ``certified_size`` is the largest size for which the family is complete.
    Through the root that needs the ball of radius ``max_vertices - 1`` inside
    the search region; a shallower region lowers it to the depth reached.

    Raises:
        RegionTooSmall: No vertex has a complete neighborhood.
    """
    pool = search_region(g)
    if not pool:
        raise RegionTooSmall("no vertex of the patch has a complete neighborhood")
    roots, minimum = _search_roots(g, pool)
    best: Best = {}
    count = 0
    tasks = []
    for root in roots:
        b, c = _scan(g, [frozenset((root,))], which)
        _merge(best, b)
        count += c
        adj = {v: g.neighbors(v) for v in pool}

        def allowed(u: int, root: int = root) -> bool:
            return u in pool and (not minimum or u > root)

        for sub, ext, nbhd in _branches(adj, root, max_vertices, allowed):
            tasks.append((sub, ext, nbhd, max_vertices, pool, root, minimum, tuple(which)))

    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker,
                                 initargs=(g,)) as executor:
            for b, c in executor.map(_scan_branch, tasks):
                _merge(best, b)
                count += c
    else:
        _init_worker(g)
        for task in tasks:
            b, c = _scan_branch(task)
            _merge(best, b)
            count += c

    if minimum:
        family = "connected induced subgraphs of the search region"
        certified = max_vertices
    else:
        family = "connected induced subgraphs through the root"
        depth = certified_depth(g, roots[0], pool)
        certified = max_vertices if depth is None else min(max_vertices, depth)
    results = {}
    for sel, (value, key) in best.items():
        witness = induced_subgraph(g, key)
        if sel in FACE_SELECTORS:
            witness = face_graph(g, fill_holes(witness).fset)
        results[sel] = MinRatioResult(sel, value, witness, count, certified, family)
    return results


def brute_force_min_ratio(
    g: PlaneGraph, max_vertices: int, which: str, threads: int = 1
) -> MinRatioResult:
    """Certified minimum of one ratio; see :func:`brute_force_min_ratios`."""
    results = brute_force_min_ratios(g, max_vertices, (which,), threads)
    if which not in results:
        raise RegionTooSmall(f"no enumerated subgraph has a defined {which} ratio")
    return results[which]


# -----------------------------------------------------------------------------
# Bound verification
# -----------------------------------------------------------------------------

@dataclass
class BoundCheck:
    selector: str
    observed: Fraction
    bound: QuadraticSurd
    passed: bool
    witness: Optional[Subgraph] = field(default=None, repr=False)


@dataclass
class WitnessStep:
    """One hole-filled quasi-ball around the central face.

    ``gap`` is the exact excess of the ratio over Phi(q2, p2)/q2; ``source``
    says whether the counts come from the patch or the layer recurrence.
    """

    height: int
    boundary: int
    face_degree_sum: int
    ratio: Fraction
    epsilon: Optional[QuadraticSurd]
    passed: bool
    gap: Optional[Scalar] = None
    source: str = "patch"


@dataclass
class BoundsReport:
    p_range: tuple[int, int]
    q_range: tuple[int, int]
    lower: list[BoundCheck]
    upper: list[WitnessStep]
    upper_limit: Optional[QuadraticSurd]
    notes: list[str]
    certified_size: Optional[int] = None
    target_height: Optional[int] = None
    target_ratio: Optional[Fraction] = None
    target_met: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return (
            all(c.passed for c in self.lower)
            and all(s.passed for s in self.upper)
            and self.target_met is not False
        )


def quasi_ball_witnesses(g: PlaneGraph, face: Optional[int] = None) -> list[Subgraph]:
    """Hole-filled quasi-balls around ``face`` while their vertices stay complete."""
    if face is None:
        face = next(f for f in g.vertex_faces(g.root) if not g.is_void(f))
    cur = face_graph(g, [face])
    out = []
    while all(g.is_complete(v) for v in cur.vset):
        out.append(cur)
        nxt = face_closure(cur)
        cur = face_graph(g, fill_holes(nxt).fset)
    return out


def _witness_steps(
    p: int, q: int, counts: Sequence[tuple[int, int]], source: str
) -> list[WitnessStep]:
    """Checked steps for ``(boundary, face_degree_sum)`` pairs, one per height.

    Hyperbolic steps must stay below the limit plus their certified excess;
    Euclidean ones must not increase.
    """
    limit = phi_bounds(p, q)[FACE_SIGMA]
    hyperbolic = (p - 2) * (q - 2) > 4
    steps: list[WitnessStep] = []
    previous: Optional[Fraction] = None
    for height, (walk, sigma) in enumerate(counts):
        r = Fraction(walk, sigma)
        eps: Optional[QuadraticSurd] = None
        if hyperbolic:
            eps = upper_epsilon(p, q, sigma)
            ok = limit + eps >= r
        else:
            ok = previous is None or r <= previous
        steps.append(WitnessStep(height, walk, sigma, r, eps, ok, r - limit, source))
        previous = r
    return steps


def upper_witness_sequence(p: int, q: int, height: int) -> list[WitnessStep]:
    """Upper-side steps of the (p, q)-regular tiling up to ``height`` from layer counts.

    In a regular tiling the hole-filled quasi-ball around a face is the
    face-core patch of that height, so no graph is built.

    Raises:
        SphericalParameters: 1/p + 1/q > 1/2.
    """
    if is_spherical(p, q):
        raise SphericalParameters(f"1/{p} + 1/{q} > 1/2")
    records = layer_recurrence(p, q, height, core="face")
    return _witness_steps(p, q, [(r.boundary, r.face_degree_sum) for r in records], "recurrence")


def verify_bounds(
    g: PlaneGraph,
    p1: int,
    q1: int,
    p2: int,
    q2: int,
    budget: int,
    threads: int = 1,
    target_height: Optional[int] = None,
    target_ratio: Optional[Fraction] = None,
) -> BoundsReport:
    """Check both sides of the isoperimetric sandwich on a patch.

    The lower side certifies every enumerated ratio against the constants of
    (p1, q1). The upper side follows hole-filled quasi-balls around the
    central face and checks each against Phi(q2, p2)/q2 plus its certified
    excess (hyperbolic) or for monotone decay (Euclidean).

    With ``target_ratio`` the quasi-ball at ``target_height`` (the last one
    by default) must not exceed it. A regular patch too shallow for the
    target height is continued from the layer recurrence; on any other patch
    the target stays unchecked and ``target_met`` is None.

    Raises:
        DegreeAuditFailed: The complete region leaves the degree bounds.
    """
    problems = degree_audit(g, p1, p2, q1, q2)
    if problems:
        raise DegreeAuditFailed("; ".join(problems[:5]))
    notes: list[str] = []

    lower_bounds = phi_bounds(p1, q1)
    minima = brute_force_min_ratios(g, budget, tuple(lower_bounds), threads)
    lower = []
    certified: Optional[int] = None
    for sel, bound in lower_bounds.items():
        if sel not in minima:
            notes.append(f"no subgraph with a defined {sel} ratio")
            continue
        res = minima[sel]
        certified = res.certified_size
        lower.append(BoundCheck(sel, res.minimum, bound, bound <= res.minimum, res.witness))
    if certified is not None and certified < budget:
        notes.append(f"search region certifies subgraphs up to {certified} vertices, not {budget}")

    upper: list[WitnessStep] = []
    limit: Optional[QuadraticSurd] = None
    if is_spherical(p2, q2):
        notes.append("upper bounds need 1/p2 + 1/q2 <= 1/2")
    else:
        limit = phi_bounds(p2, q2)[FACE_SIGMA]
        counts = [(boundary_walk(a).length, a.face_degree_sum()) for a in quasi_ball_witnesses(g)]
        upper = _witness_steps(p2, q2, counts, "patch")
        regular = g.meta.get("kind") == "regular" and (p1, q1) == (p2, q2)
        if regular and target_height is not None and target_height >= len(upper):
            notes.append(f"heights {len(upper)} to {target_height} taken from the layer recurrence")
            upper.extend(upper_witness_sequence(p2, q2, target_height)[len(upper):])

    met: Optional[bool] = None
    if target_ratio is not None:
        height = target_height if target_height is not None else len(upper) - 1
        step = next((s for s in upper if s.height == height), None)
        if step is None:
            notes.append(f"no upper witness at height {height}; target not checked")
        else:
            met = step.ratio <= target_ratio
            if not met:
                notes.append(f"ratio {step.ratio} at height {height} exceeds target {target_ratio}")
    return BoundsReport(
        (p1, p2), (q1, q2), lower, upper, limit, notes,
        certified, target_height, target_ratio, met,
    )


# -----------------------------------------------------------------------------
# Growth
# -----------------------------------------------------------------------------

@dataclass
class GrowthEstimate:
    """Ball sizes around a vertex and estimates of the exponential growth rate."""

    sizes: list[int]
    log_ratios: list[float]
    tail_slope: float
    mu_hat: float
    j1_lower: Optional[QuadraticSurd] = None
    j1_check: Optional[bool] = None


def _recurrence_root(layers: Sequence[int]) -> Optional[float]:
    """Dominant root of s_n = c1 s_{n-1} + c2 s_{n-2} fitted to ``layers``."""
    if len(layers) < 4:
        return None
    rows = np.array([[layers[i - 1], layers[i - 2]] for i in range(2, len(layers))], dtype=float)
    rhs = np.array(layers[2:], dtype=float)
    (c1, c2), *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    roots = np.roots([1.0, -c1, -c2])
    return float(max(abs(r) for r in roots))


def growth_rate(
    g: PlaneGraph,
    v0: int,
    n_max: int,
    j1_lower: Optional[Union[Fraction, QuadraticSurd]] = None,
) -> GrowthEstimate:
    """Ball sizes |V(B_n(v0))| for n <= n_max with growth-rate estimates.

    ``tail_slope`` is the slope of ln|V(B_n)| over the last half of the
    range; ``mu_hat`` is the log of the dominant root of a second-order
    recurrence fitted to the last layer sizes, falling back to the slope
    when fewer than four layers exist.

    Raises:
        UnsafeSubgraph: A vertex closer than ``n_max`` is incomplete.
    """
    dist = g.distances(v0, limit=n_max)
    for v, d in dist.items():
        if d < n_max and not g.is_complete(v):
            raise UnsafeSubgraph(f"vertex {v} at distance {d} is incomplete")
    counts = [0] * (n_max + 1)
    for d in dist.values():
        counts[d] += 1
    sizes = list(np.cumsum(counts).tolist())
    log_ratios = [math.log(sizes[n] / sizes[n - 1]) for n in range(1, n_max + 1)]
    if n_max == 0:
        slope = 0.0
    else:
        w = max(1, n_max // 2)
        slope = (math.log(sizes[n_max]) - math.log(sizes[n_max - w])) / w
    window = counts[1:][-6:]
    root = _recurrence_root(window)
    mu_hat = math.log(max(1.0, root)) if root is not None else slope
    estimate = GrowthEstimate(sizes, log_ratios, slope, mu_hat)
    if j1_lower is not None:
        base = QuadraticSurd(1) + j1_lower
        estimate.j1_lower = base - 1
        estimate.j1_check = all(base ** n <= size for n, size in enumerate(sizes))
    return estimate
