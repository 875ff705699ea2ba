"""Tests for isoperimetric constants, ratios and searches."""
import math
from fractions import Fraction

import pytest

from src.core.errors import (
    DegreeAuditFailed,
    ParabolicParameters,
    RegionTooSmall,
    SphericalParameters,
    UnsafeSubgraph,
)
from src.core.exact import QuadraticSurd
from src.core.generators import layer_recurrence, platonic_solid, regular_patch
from src.core.graph import empty_subgraph
from src.core.isoperimetry import (
    EDGE_SIGMA,
    EDGE_VERTEX,
    FACE_BOUNDARY,
    FACE_SIGMA,
    alpha,
    brute_force_min_ratio,
    brute_force_min_ratios,
    certified_depth,
    enumerate_connected_sets,
    growth_rate,
    phi,
    phi_bounds,
    search_region,
    subgraph_ratios,
    upper_witness_sequence,
    vertex_constant_identity,
    vertex_count_bound,
    verify_bounds,
)


class TestConstants:
    """Test cases for the sharp constants."""

    def test_phi_squares(self):
        """Test Phi through its exact square."""
        assert phi(7, 3).square == 5
        assert phi(3, 7).square == Fraction(1, 5)
        assert phi(6, 3).square == 0

    def test_phi_comparison(self):
        """Test that rationals are compared with Phi exactly."""
        assert phi(7, 3).is_below(Fraction(3))
        assert not phi(7, 3).is_below(Fraction(2))

    def test_phi_spherical(self):
        """Test that spherical parameters have no constant."""
        with pytest.raises(SphericalParameters):
            phi(3, 3)

    def test_phi_bounds(self):
        """Test the four constants of the (7,3) tiling."""
        bounds = phi_bounds(7, 3)
        assert bounds[EDGE_VERTEX] == QuadraticSurd.sqrt(5)
        assert bounds[FACE_BOUNDARY] == QuadraticSurd(0, Fraction(1, 5), 5)
        assert bounds[EDGE_SIGMA] == QuadraticSurd(0, Fraction(1, 7), 5)
        assert bounds[FACE_SIGMA] == QuadraticSurd(0, Fraction(1, 15), 5)

    def test_alpha(self):
        """Test the growth root and its parameter checks."""
        assert alpha(7, 3) == QuadraticSurd(Fraction(3, 2), Fraction(1, 2), 5)
        with pytest.raises(ParabolicParameters):
            alpha(6, 3)
        with pytest.raises(SphericalParameters):
            alpha(4, 3)

    def test_vertex_count_bound(self):
        """Test alpha/(alpha-1) times the boundary size."""
        assert vertex_count_bound(7, 3, 7) == QuadraticSurd(Fraction(7, 2), Fraction(7, 2), 5)

    def test_vertex_constant_identity(self):
        """Test j0 = j1 / (1 + j1)."""
        assert vertex_constant_identity(Fraction(1)) == Fraction(1, 2)


class TestRatios:
    """Test cases for subgraph ratios."""

    def test_hexagon_ratios(self, patch_63, ball):
        """Test all ratios of the unit ball in the triangular lattice."""
        r = subgraph_ratios(patch_63, ball(patch_63, 1))
        assert r.i_edge == Fraction(18, 7)
        assert r.i_edge_sigma == Fraction(3, 7)
        assert r.j0 == Fraction(6, 7)
        assert r.j1 == Fraction(12, 7)
        assert r.i_face == 1
        assert r.i_face_sigma == Fraction(1, 3)

    def test_heptagonal_ball(self, patch_73, ball):
        """Test vertex ratios of the unit ball in the (7,3) tiling."""
        r = subgraph_ratios(patch_73, ball(patch_73, 1))
        assert r.i_edge == Fraction(7, 2)
        assert r.j0 == Fraction(7, 8)
        assert r.j1 == Fraction(21, 8)

    def test_empty_subgraph(self, patch_73):
        """Test that an empty subgraph has no ratios."""
        with pytest.raises(UnsafeSubgraph):
            subgraph_ratios(patch_73, empty_subgraph(patch_73))


class TestSearch:
    """Test cases for connected-set enumeration and minimum searches."""

    def test_enumeration_counts(self, patch_63):
        """Test connected sets through a lattice vertex, each produced once."""
        sets = list(enumerate_connected_sets(patch_63, 0, 3))
        assert len(sets) == 40
        assert len(set(sets)) == 40
        assert all(0 in s for s in sets)

    def test_hexagon_is_optimal(self, patch_63_wide):
        """Test the certified minimum edge-vertex ratio up to seven vertices."""
        result = brute_force_min_ratio(patch_63_wide, 7, EDGE_VERTEX)
        assert result.minimum == Fraction(18, 7)
        assert len(result.witness.vset) == 7
        assert result.certified_size == 7

    def test_shallow_region_lowers_certified_size(self, patch_63):
        """Test that sets reaching past the search region are not certified."""
        pool = search_region(patch_63)
        assert certified_depth(patch_63, patch_63.root, pool) == 3
        result = brute_force_min_ratio(patch_63, 7, EDGE_VERTEX)
        assert result.minimum == Fraction(18, 7)
        assert result.certified_size == 3

    def test_closed_graph_is_fully_certified(self):
        """Test that a closed graph certifies every requested size."""
        cube = platonic_solid("cube")
        assert certified_depth(cube, cube.root, search_region(cube)) is None
        assert brute_force_min_ratio(cube, 4, EDGE_VERTEX).certified_size == 4

    def test_threads_agree(self, patch_63):
        """Test that worker processes find the same minimum."""
        serial = brute_force_min_ratios(patch_63, 5, (EDGE_VERTEX,), threads=1)
        parallel = brute_force_min_ratios(patch_63, 5, (EDGE_VERTEX,), threads=2)
        assert serial[EDGE_VERTEX].minimum == parallel[EDGE_VERTEX].minimum == Fraction(16, 5)
        assert serial[EDGE_VERTEX].enumerated == parallel[EDGE_VERTEX].enumerated

    def test_region_too_small(self):
        """Test that a patch without complete neighborhoods is refused."""
        with pytest.raises(RegionTooSmall):
            brute_force_min_ratio(regular_patch(7, 3, 1, core="vertex"), 4, EDGE_VERTEX)


class TestVerifyBounds:
    """Test cases for the bound sandwich."""

    def test_hyperbolic_patch(self, patch_73):
        """Test lower and upper bounds on the (7,3) patch."""
        report = verify_bounds(patch_73, 7, 3, 7, 3, budget=6)
        assert report.passed
        assert len(report.upper) == 2
        assert report.upper[1].ratio == Fraction(1, 4)
        assert report.upper[1].gap == Fraction(1, 4) - QuadraticSurd(0, Fraction(1, 15), 5)

    def test_shallow_patch_noted(self, patch_73):
        """Test that a search region below the budget is reported."""
        report = verify_bounds(patch_73, 7, 3, 7, 3, budget=6)
        assert report.certified_size == 2
        assert any("up to 2 vertices" in note for note in report.notes)

    def test_euclidean_patch(self, patch_63):
        """Test the Euclidean case with monotone witnesses."""
        report = verify_bounds(patch_63, 6, 3, 6, 3, budget=5)
        assert report.passed
        assert report.upper[0].epsilon is None
        assert report.upper[-1].gap == report.upper[-1].ratio

    def test_degree_audit(self, patch_63):
        """Test that degrees below p1 abort the check."""
        with pytest.raises(DegreeAuditFailed):
            verify_bounds(patch_63, 7, 3, 7, 3, budget=4)

    def test_hyperbolic_target(self, patch_73):
        """Test the (7,3) witness at height 10 against 0.169, continued from layer counts."""
        report = verify_bounds(
            patch_73, 7, 3, 7, 3, budget=3, target_height=10, target_ratio=Fraction(169, 1000),
        )
        assert report.target_met is True
        assert report.passed
        step = report.upper[10]
        assert step.source == "recurrence"
        assert (step.boundary, step.face_degree_sum) == (73428, 492528)
        assert float(step.gap) == pytest.approx(0.149084 - 0.149071, abs=1e-5)

    def test_euclidean_target(self, patch_63):
        """Test the (6,3) witness at height 20 against 0.05."""
        report = verify_bounds(
            patch_63, 6, 3, 6, 3, budget=3, target_height=20, target_ratio=Fraction(1, 20),
        )
        assert report.target_met is True
        assert report.upper[20].ratio == Fraction(123, 7563)

    def test_missed_target_fails(self, patch_73):
        """Test that a target below the witness ratio fails the report."""
        report = verify_bounds(patch_73, 7, 3, 7, 3, budget=3, target_ratio=Fraction(1, 5))
        assert report.target_met is False
        assert not report.passed

    def test_unreachable_target_height(self, patch_73):
        """Test that a non-regular reading leaves the target unchecked."""
        report = verify_bounds(
            patch_73, 7, 3, 8, 3, budget=3, target_height=10, target_ratio=Fraction(1, 5),
        )
        assert report.target_met is None
        assert any("no upper witness at height 10" in note for note in report.notes)

    @pytest.mark.slow
    @pytest.mark.parametrize("p,q,height", [(7, 3, 4), (4, 5, 3)])
    def test_lower_bounds_up_to_ten_vertices(self, p, q, height):
        """Test every connected induced subgraph of up to 10 vertices against the sharp constants."""
        g = regular_patch(p, q, height, core="vertex")
        report = verify_bounds(g, p, q, p, q, budget=10, threads=4)
        assert {c.selector for c in report.lower} >= {EDGE_VERTEX, FACE_SIGMA}
        assert all(c.passed for c in report.lower)
        edge = next(c for c in report.lower if c.selector == EDGE_VERTEX)
        assert phi(p, q).is_below(edge.observed)


class TestUpperWitnessSequence:
    """Test cases for upper-side steps from layer counts."""

    def test_matches_patch(self, patch_73):
        """Test that layer counts reproduce the quasi-balls of a patch."""
        from_patch = verify_bounds(patch_73, 7, 3, 7, 3, budget=3).upper
        counted = upper_witness_sequence(7, 3, len(from_patch) - 1)
        assert [(s.boundary, s.face_degree_sum) for s in counted] == [
            (s.boundary, s.face_degree_sum) for s in from_patch
        ]

    def test_heptagonal_limit(self):
        """Test that every step passes the exact check and approaches sqrt(5)/15."""
        steps = upper_witness_sequence(7, 3, 10)
        assert all(s.passed for s in steps)
        assert steps[10].ratio == Fraction(6119, 41044)
        assert steps[10].ratio <= Fraction(169, 1000)
        assert 0 < steps[10].gap < steps[5].gap

    def test_euclidean_sequence(self):
        """Test s_N = 3 + 6N on the triangular lattice."""
        steps = upper_witness_sequence(6, 3, 20)
        assert [s.boundary for s in steps[:4]] == [3, 9, 15, 21]
        assert steps[20].ratio == Fraction(123, 7563)
        assert steps[20].ratio <= Fraction(1, 20)
        assert all(s.passed for s in steps)

    def test_spherical(self):
        """Test that spherical parameters have no sequence."""
        with pytest.raises(SphericalParameters):
            upper_witness_sequence(5, 3, 2)


class TestEdgeWitness:
    """Test cases for balls approaching the sharp edge constant."""

    def test_ball_matches_layer_counts(self, patch_73_tall, ball):
        """Test that layer counts give the edge ratio of a real ball."""
        records = layer_recurrence(7, 3, 3)
        ratios = subgraph_ratios(patch_73_tall, ball(patch_73_tall, 3))
        assert ratios.i_edge == Fraction(records[3].spokes, records[3].vertices) == Fraction(203, 85)

    def test_heptagonal_ball_at_height_ten(self):
        """Test i_edge of the radius-10 ball within 5% of sqrt(5), and above it."""
        records = layer_recurrence(7, 3, 10)
        ratio = Fraction(records[10].spokes, records[10].vertices)
        assert phi(7, 3).is_below(ratio)
        assert float(ratio) == pytest.approx(math.sqrt(5), rel=0.05)


class TestGrowthRate:
    """Test cases for growth estimates."""

    def test_heptagonal_growth(self, patch_73_tall):
        """Test ball sizes and the fitted growth rate."""
        estimate = growth_rate(patch_73_tall, 0, 4, j1_lower=Fraction(1))
        assert estimate.sizes == [1, 8, 29, 85, 232]
        assert estimate.mu_hat == pytest.approx(0.9624, abs=1e-3)
        assert estimate.j1_check

    def test_tail_slope(self, patch_73_tall):
        """Test the slope of ln|V(B_n)| over the last half of the radii."""
        estimate = growth_rate(patch_73_tall, 0, 4)
        assert estimate.tail_slope == pytest.approx((math.log(232) - math.log(29)) / 2)

    def test_triangular_lattice_grows_quadratically(self, patch_63_wide):
        """Test hexagonal-number ball sizes and a near-zero growth rate."""
        estimate = growth_rate(patch_63_wide, patch_63_wide.root, 7)
        assert estimate.sizes == [3 * n * n + 3 * n + 1 for n in range(8)]
        assert estimate.mu_hat < 0.05

    @pytest.mark.slow
    def test_heptagonal_growth_at_radius_eight(self):
        """Test the fitted rate within 10% of ln((3 + sqrt(5)) / 2)."""
        g = regular_patch(7, 3, 9, core="vertex")
        estimate = growth_rate(g, g.root, 8)
        assert estimate.mu_hat == pytest.approx(math.log((3 + math.sqrt(5)) / 2), rel=0.1)

    def test_unsafe_radius(self, patch_73):
        """Test that balls reaching the rim are refused."""
        with pytest.raises(UnsafeSubgraph):
            growth_rate(patch_73, 0, 4)
