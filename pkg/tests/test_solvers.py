import os

import hypothesis as hyp
import pytest

from src.exceptions import DegenerateInputError, UnsupportedFlatError
from src.geometry.dual_reduce import CoveringInstance, build_instance, strict_crossing_count
from src.geometry.exact_core import ArrangementFunctional, ProjectiveFlat, lift_affine, lift_direction
from src.instance_io import SplitMix64
from src.oracle import brute_force_min
from src.solvers import (
    CircleSolver,
    PointPairSolver,
    TorusSolver,
    get_solver_class,
    list_available_solvers,
    solve_circle,
    solve_point_pair,
    solve_torus,
    solver_for_instance,
)
from src.solvers.base_solver import load_solver_config

from . import strategies

full_size = pytest.mark.skipif(os.getenv("DEPTH_RUN_SLOW") != "1", reason="set DEPTH_RUN_SLOW=1 to run the full batteries")

X_AXIS = ProjectiveFlat((lift_affine((0, 0, 0)), lift_direction((1, 0, 0))))
SKEW = ProjectiveFlat((lift_affine((0, 1, 0)), lift_direction((0, 0, 1))))
POINT_A = ProjectiveFlat((lift_affine((0, 0, 5)),))
POINT_B = ProjectiveFlat((lift_affine((1, 2, 3)),))


def assert_witness_realises(inst, result):
    w = result.witness
    assert strict_crossing_count(inst, w.coords1, w.coords2) == result.strict_min
    assert inst.factor1.contains(w.u1)
    assert inst.factor2.contains(w.u2)


class TestRegistry:
    def test_lookup(self):
        assert get_solver_class("Torus") is TorusSolver
        assert get_solver_class("nope") is None
        assert set(list_available_solvers()) == {"point_pair", "circle", "torus"}

    def test_dispatch_by_factor_dims(self):
        inst = build_instance([], X_AXIS, SKEW)
        solver = solver_for_instance(inst, {"torus": {"reverse": True}})
        assert isinstance(solver, TorusSolver)
        assert solver.reverse

    def test_wrong_dims_rejected(self):
        inst = build_instance([], POINT_A, POINT_B)
        with pytest.raises(UnsupportedFlatError):
            TorusSolver().solve(inst)

    def test_performance_metrics(self):
        solver = PointPairSolver()
        solver.solve(build_instance([ArrangementFunctional((1, 0, 0, 0))], POINT_A, POINT_B))
        info = solver.get_solver_info()
        assert info["solve_count"] == 1
        assert info["factor_dims"] == [1, 1]

    def test_load_default_config(self):
        config = load_solver_config()
        assert config["headline"] == "closed"
        assert "torus" in config["solvers"]

    def test_missing_config_file(self, tmp_path):
        assert load_solver_config(tmp_path / "missing.yaml") == {}


class TestPointPair:
    def test_no_hyperplanes(self):
        assert solve_point_pair(build_instance([], POINT_A, POINT_B)).distance == 0

    def test_one_hyperplane_nonzero_at_both(self):
        inst = build_instance([ArrangementFunctional((1, 0, 0, -7))], POINT_A, POINT_B)
        assert inst.n_active == 1
        assert solve_point_pair(inst).strict_min == 0

    @hyp.given(strategies.covering_instances((1, 1)))
    def test_matches_oracle(self, inst):
        result = solve_point_pair(inst)
        assert result.strict_min == brute_force_min(inst).strict_min
        assert result.distance == result.strict_min + inst.incident_count
        assert_witness_realises(inst, result)


class TestCircle:
    def test_no_hyperplanes(self):
        assert solve_circle(build_instance([], POINT_A, SKEW)).distance == 0

    def test_single_hyperplane(self):
        inst = build_instance([ArrangementFunctional((1, 1, 1, 1))], POINT_A, SKEW)
        assert inst.n_active == 1
        assert solve_circle(inst).strict_min == 0

    def test_common_positive_point(self):
        # all positive at (0, 2, 0) and at (0, 1, 0) on the skew line
        hs = [
            ArrangementFunctional((0, 1, 0, 0)),
            ArrangementFunctional((0, 1, 1, 0)),
            ArrangementFunctional((0, 1, -1, 0)),
        ]
        inst = build_instance(hs, ProjectiveFlat((lift_affine((0, 2, 0)),)), SKEW)
        assert solve_circle(inst).strict_min == 0

    @hyp.given(strategies.covering_instances((1, 2), max_hyperplanes=16), hyp.strategies.integers(0, 40))
    def test_matches_oracle(self, inst, rotation):
        result = CircleSolver({"rotation": rotation}).solve(inst)
        assert result.strict_min == brute_force_min(inst).strict_min
        assert_witness_realises(inst, result)


class TestTorus:
    def test_no_hyperplanes(self):
        assert solve_torus(build_instance([], X_AXIS, SKEW)).distance == 0

    def test_single_hyperplane(self):
        inst = build_instance([ArrangementFunctional((1, 2, 3, 4))], X_AXIS, SKEW)
        assert inst.n_active == 1
        assert solve_torus(inst).strict_min == 0

    @hyp.given(strategies.covering_instances((2, 2), dim=3, max_hyperplanes=12))
    def test_matches_oracle_in_r3(self, inst):
        result = solve_torus(inst, debug_checks=True)
        assert result.strict_min == brute_force_min(inst).strict_min
        assert_witness_realises(inst, result)

    @hyp.given(strategies.covering_instances((2, 2), dim=4, max_hyperplanes=12))
    def test_matches_oracle_in_r4(self, inst):
        result = TorusSolver({"debug_checks": True}).solve(inst)
        assert result.strict_min == brute_force_min(inst).strict_min
        assert_witness_realises(inst, result)

    @hyp.given(
        strategies.covering_instances((2, 2), dim=3, max_hyperplanes=10),
        hyp.strategies.booleans(),
        hyp.strategies.integers(0, 40),
    )
    def test_sweep_direction_and_cut_do_not_matter(self, inst, reverse, rotation):
        expected = solve_torus(inst).strict_min
        result = solve_torus(inst, reverse=reverse, rotation=rotation)
        assert result.strict_min == expected
        assert_witness_realises(inst, result)


def seeded_instance(seed, dims, dim, max_n=32, bound=20):
    """Generated covering instance; redraws until the flats are proper and disjoint"""
    rng = SplitMix64(seed)
    n = rng.randint(1, max_n)
    hs = [ArrangementFunctional(rng.nonzero_vector(dim + 1, bound)) for _ in range(n)]
    while True:
        try:
            flats = [ProjectiveFlat(tuple(lift_affine(rng.vector(dim, bound)) for _ in range(h))) for h in dims]
        except DegenerateInputError:
            continue
        inst = build_instance(hs, *flats)
        if isinstance(inst, CoveringInstance):
            return inst


def assert_solver_matches_oracle(inst):
    result = solver_for_instance(inst).solve(inst)
    assert result.strict_min == brute_force_min(inst).strict_min
    assert_witness_realises(inst, result)


DISPATCHES = [((2, 2), 3), ((2, 2), 4), ((2, 2), 5), ((1, 2), 3), ((1, 2), 4), ((1, 1), 3), ((1, 1), 5)]


class TestSeededOracleBattery:
    @pytest.mark.parametrize("dims, dim", DISPATCHES)
    @pytest.mark.parametrize("seed", range(12))
    def test_generated_instances(self, dims, dim, seed):
        assert_solver_matches_oracle(seeded_instance(seed, dims, dim))

    @pytest.mark.slow
    @full_size
    @pytest.mark.parametrize("dims, dim", DISPATCHES)
    def test_five_hundred_seeds(self, dims, dim):
        for seed in range(500):
            assert_solver_matches_oracle(seeded_instance(seed, dims, dim))
