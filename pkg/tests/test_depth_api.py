from fractions import Fraction

import hypothesis as hyp
import hypothesis.strategies as hys
import pytest

from src.depth_api import AffineFlatSpec, DepthEngine, as_flat_spec, witness_to_primal
from src.exceptions import ConfigurationError, DegenerateInputError, UnsupportedFlatError
from src.geometry.exact_core import ArrangementFunctional, HomogeneousPoint, lift_affine
from src.instance_io import generate_instance
from src.oracle import STRICT, brute_force_min, double_wedge_count, tukey2_primal

from . import strategies

SQUARE = [(1, 0), (-1, 0), (0, 1), (0, -1)]
TRIANGLE = [(0, 0), (1, 0), (0, 1)]


def assert_primal_witness(report, points):
    """The primal double wedge holds exactly strict_min points"""
    g1, g2 = (h.functional() for h in report.primal_witness.hyperplanes)
    assert double_wedge_count(points, g1, g2, STRICT) == report.strict_min
    assert report.primal_witness.count == report.strict_min


class TestFlatSpec:
    def test_three_points_unsupported(self):
        with pytest.raises(UnsupportedFlatError):
            AffineFlatSpec.from_points((0, 0, 0), (1, 0, 0), (0, 1, 0))

    def test_repeated_point(self):
        with pytest.raises(DegenerateInputError):
            AffineFlatSpec.from_points((1, 1), (1, 1))

    def test_zero_direction(self):
        with pytest.raises(DegenerateInputError):
            AffineFlatSpec.from_point_direction((1, 1), (0, 0))

    def test_slope_intercept(self):
        flat = AffineFlatSpec.from_slope_intercept(2, 1).to_projective()
        assert flat.contains(lift_affine((1, 3)))
        assert flat.contains(lift_affine((-1, -1)))

    def test_plain_lists_accepted(self):
        assert as_flat_spec([(0, 0), (1, 1)]).flat_dim == 1
        assert as_flat_spec((3, 4)).flat_dim == 0

    def test_homogeneous(self):
        spec = AffineFlatSpec.from_homogeneous((1, 0, 0, 0), (0, 0, 0, 1))
        assert spec.dimension == 3
        assert spec.flat_dim == 1


class TestPrimalWitness:
    def test_vertical_plane(self):
        (_, h) = witness_to_primal(HomogeneousPoint((0, 0, 1, 0)), HomogeneousPoint((1, 0, 0, -2))).hyperplanes
        assert h.coeffs == (1, 0, 0)
        assert h.rhs == 2
        assert not h.is_at_infinity

    def test_hyperplane_at_infinity(self):
        (h, _) = witness_to_primal(HomogeneousPoint((0, 0, 0, 1)), HomogeneousPoint((1, 0, 0, 0))).hyperplanes
        assert h.is_at_infinity


class TestTukeyDepth:
    def test_square(self, engine):
        assert engine.tukey_depth2(SQUARE, (0, 0)).distance == 2

    def test_triangle(self, engine):
        assert engine.tukey_depth2(TRIANGLE, (Fraction(1, 3), Fraction(1, 3))).distance == 1

    def test_far_outside(self, engine):
        assert engine.tukey_depth2(SQUARE, (10, 10)).distance == 0

    def test_coincident_point_counts_in_closed_depth(self, engine):
        report = engine.tukey_depth2([(0, 0), (10, 0), (10, 1), (11, 5)], (0, 0))
        assert report.distance == 1
        assert report.incident_count == 1
        assert report.strict_min == 0

    def test_witness_is_on_the_original_factors(self, engine):
        report = engine.tukey_depth2(SQUARE, (0, 0))
        assert report.instance.factor1.contains(report.witness.u1)
        assert report.instance.factor2.contains(report.witness.u2)
        assert_primal_witness(report, SQUARE)

    @hyp.given(strategies.points(2, max_size=14), hys.data())
    def test_agrees_with_primal_tukey(self, engine, points, data):
        if points and data.draw(hys.booleans()):
            q = data.draw(hys.sampled_from(points))
        else:
            q = data.draw(hys.tuples(strategies.coordinates, strategies.coordinates))
        report = engine.tukey_depth2(points, q)
        assert report.distance == tukey2_primal(points, q)
        assert_primal_witness(report, points)

    @pytest.mark.parametrize("seed", range(10))
    def test_generated_instances(self, seed, engine):
        instance = generate_instance(seed, 20 + seed, 2, coord_bound=8, kind="tukey2", degenerate=seed % 2 == 1)
        report = engine.tukey_depth2(instance.points, instance.query.point)
        assert report.distance == tukey2_primal(instance.points, instance.query.point)

    def test_needs_planar_point(self, engine):
        with pytest.raises(UnsupportedFlatError):
            engine.tukey_depth2([(0, 0, 0)], (0, 0, 0))


class TestRegressionDepthLine2:
    def test_vertical_line_is_a_regression_failure(self, engine):
        report = engine.regression_depth_line2(SQUARE, [(3, 0), (3, 1)])
        assert report.distance == 0
        assert report.result.intersecting

    def test_all_points_on_line(self, engine):
        points = [(0, 0), (1, 1), (2, 2), (5, 5)]
        report = engine.regression_depth_line2(points, [(0, 0), (1, 1)])
        assert report.distance == len(points)
        assert report.incident_count == len(points)

    def test_no_points(self, engine):
        assert engine.regression_depth_line2([], [(0, 0), (1, 1)]).distance == 0

    @hyp.given(strategies.points(2, max_size=16), strategies.coordinates, strategies.coordinates)
    def test_matches_oracle(self, engine, points, slope, intercept):
        report = engine.regression_depth_line2(points, AffineFlatSpec.from_slope_intercept(slope, intercept))
        oracle = brute_force_min(report.instance)
        assert report.strict_min == oracle.strict_min
        assert report.distance == oracle.strict_min + report.incident_count
        assert_primal_witness(report, points)

    def test_needs_planar_line(self, engine):
        with pytest.raises(UnsupportedFlatError):
            engine.regression_depth_line2([(0, 0, 0)], [(0, 0, 0), (1, 1, 1)])


class TestRegressionDepthLine3:
    def test_line_parallel_to_response_plane(self, engine):
        points = [(1, 2, 3), (4, -1, 0), (0, 0, 7)]
        report = engine.regression_depth_line3(points, AffineFlatSpec.from_point_direction((1, 1, 1), (0, 2, -1)))
        assert report.distance == 0

    @hyp.given(strategies.points(3, max_size=12), hys.tuples(*[strategies.coordinates] * 3), strategies.nonzero_pairs)
    def test_regression_failures_have_depth_zero(self, engine, points, p, direction):
        line = AffineFlatSpec.from_point_direction(p, (0,) + direction)
        assert engine.regression_depth_line3(points, line).distance == 0

    def test_no_points(self, engine):
        assert engine.regression_depth_line3([], [(0, 0, 0), (1, 0, 0)]).distance == 0

    def test_all_points_on_line(self, engine):
        points = [(0, 0, 0), (1, 1, 1), (3, 3, 3)]
        assert engine.regression_depth_line3(points, [(0, 0, 0), (1, 1, 1)]).distance == 3

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_oracle(self, seed, engine):
        instance = generate_instance(seed, 10, 3, coord_bound=20, degenerate=seed % 3 == 0)
        report = engine.regression_depth_line3(instance.points, instance.query.line)
        oracle = brute_force_min(report.instance)
        assert report.strict_min == oracle.strict_min
        assert report.distance == oracle.strict_min + report.incident_count
        if report.witness is not None:
            assert_primal_witness(report, instance.points)

    def test_needs_line_in_space(self, engine):
        with pytest.raises(UnsupportedFlatError):
            engine.regression_depth_line3([(0, 0)], [(0, 0), (1, 1)])


class TestCrossingDistance:
    def test_skew_lines_one_hyperplane(self, engine):
        report = engine.crossing_distance([((0, 1, 0), 2)], [(0, 0, 0), (1, 0, 0)], [(0, 1, 0), (0, 1, 1)])
        assert report.distance == 0
        assert report.result.solver == "torus"

    def test_intersecting_flats(self, engine):
        report = engine.crossing_distance([((1, 0, 0), 5)], [(0, 0, 0), (1, 0, 0)], [(0, 0, 0), (0, 1, 0)])
        assert report.distance == 0
        assert report.result.intersecting
        assert report.witness is None

    def test_separating_hyperplanes(self, engine):
        # x-axis vs the line {(0, t, 10)}: straight up crosses z = 1, 2, 3,
        # the way down through infinity only z = -1, -2
        hyperplanes = [((0, 0, 1), k) for k in (1, 2, 3, -1, -2)]
        report = engine.crossing_distance(hyperplanes, [(0, 0, 0), (1, 0, 0)], [(0, 0, 10), (0, 1, 10)])
        assert report.strict_min == 2
        assert brute_force_min(report.instance).strict_min == 2

    def test_point_and_line(self, engine):
        report = engine.crossing_distance([((1, 0, 0), 1)], [(5, 5, 5)], [(0, 1, 0), (0, 1, 1)])
        assert report.result.solver == "circle"
        assert report.distance == 0

    def test_accepts_functionals(self, engine):
        report = engine.crossing_distance([ArrangementFunctional((0, 0, 1, -1))], [(0, 0, 0)], [(0, 0, 2)])
        assert report.result.solver == "point_pair"
        assert report.strict_min == 0


class TestEngineConfig:
    def test_strict_headline_from_env(self, clean_env):
        clean_env.setenv("DEPTH_HEADLINE", "strict")
        report = DepthEngine().tukey_depth2([(0, 0), (10, 0), (10, 1), (11, 5)], (0, 0))
        assert report.headline == "strict"
        assert report.distance == 0
        assert report.result.distance == 1

    def test_bad_headline(self, clean_env):
        clean_env.setenv("DEPTH_HEADLINE", "open")
        with pytest.raises(ConfigurationError):
            DepthEngine()

    def test_bad_coord_bound(self, clean_env):
        clean_env.setenv("DEPTH_COORD_BOUND", "lots")
        with pytest.raises(ConfigurationError):
            DepthEngine()

    def test_debug_checks_reach_the_solvers(self, clean_env):
        clean_env.setenv("DEPTH_DEBUG_CHECKS", "1")
        engine = DepthEngine()
        assert engine.debug_checks
        assert engine.solvers_config["torus"]["debug_checks"]

    def test_overrides(self, clean_env):
        engine = DepthEngine(overrides={"headline": "strict"})
        assert engine.headline == "strict"
