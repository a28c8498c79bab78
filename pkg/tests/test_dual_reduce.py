from fractions import Fraction

import hypothesis as hyp
import pytest

from src.exceptions import DimensionMismatchError, UnsupportedFlatError
from src.geometry.dual_reduce import (
    CoveringInstance,
    IntersectingFlats,
    build_instance,
    dual_flat_of_line,
    dual_of_point,
    functional_of_affine_hyperplane,
    strict_crossing_count,
    vertical_infinity_flat,
)
from src.geometry.exact_core import (
    ArrangementFunctional,
    HomogeneousPoint,
    ProjectiveFlat,
    lift_affine,
    lift_direction,
)

from . import strategies


def span(*vectors):
    return ProjectiveFlat(tuple(HomogeneousPoint(v) for v in vectors))


X_AXIS = ProjectiveFlat((lift_affine((0, 0, 0)), lift_direction((1, 0, 0))))
# the line {(0, 1, t)}
SKEW = ProjectiveFlat((lift_affine((0, 1, 0)), lift_direction((0, 0, 1))))


class TestDualisation:
    def test_dual_of_point(self):
        assert dual_of_point((0, 0, 0)).coeffs == (0, 0, 0, 1)
        assert dual_of_point((1, 2)).coeffs == (1, 2, 1)

    def test_dual_of_point_checks_dimension(self):
        with pytest.raises(DimensionMismatchError):
            dual_of_point((1, 2), d=3)

    def test_functional_of_affine_hyperplane(self):
        assert functional_of_affine_hyperplane((0, 1, 0), 2).coeffs == (0, 1, 0, -2)
        assert functional_of_affine_hyperplane((1, 1), 0).coeffs == (1, 1, 0)

    @pytest.mark.parametrize(
        "d, k, expected",
        [
            (3, 1, [(1, 0, 0, 0), (0, 0, 0, 1)]),
            (2, 1, [(1, 0, 0), (0, 0, 1)]),
            (2, 0, [(0, 0, 1)]),
        ],
    )
    def test_vertical_infinity_flat(self, d, k, expected):
        assert vertical_infinity_flat(d, k).spans_same(span(*expected))

    @pytest.mark.parametrize("d, k", [(3, 3), (2, -1)])
    def test_vertical_infinity_flat_out_of_range(self, d, k):
        with pytest.raises(UnsupportedFlatError):
            vertical_infinity_flat(d, k)

    def test_dual_of_line_holds_hyperplanes_through_it(self):
        p, q = lift_affine((0, 0, 0)), lift_affine((1, 0, 0))
        dual = dual_flat_of_line(p, q)
        assert dual.hdim == 2
        for b in dual.basis:
            assert b.dot(p.coords) == 0 and b.dot(q.coords) == 0


class TestBuildInstance:
    def test_restriction_values(self):
        inst = build_instance([ArrangementFunctional((0, 1, 0, -2))], X_AXIS, SKEW)
        assert isinstance(inst, CoveringInstance)
        (h,) = inst.functionals
        assert h.factor1 == (-2, 0)
        assert h.factor2 == (-1, 0)

    def test_flats_sharing_a_point(self):
        y_axis = ProjectiveFlat((lift_affine((0, 0, 0)), lift_direction((0, 1, 0))))
        inst = build_instance([ArrangementFunctional((1, 0, 0, 5))], X_AXIS, y_axis)
        assert isinstance(inst, IntersectingFlats)
        assert inst.n == 1

    def test_functional_vanishing_on_a_factor_is_incident(self):
        # y = 0 contains the x-axis
        hs = [ArrangementFunctional((0, 1, 0, 0)), ArrangementFunctional((1, 0, 0, -3))]
        inst = build_instance(hs, X_AXIS, SKEW)
        assert inst.incident_count == 1
        assert inst.n_active == 1
        assert inst.n == 2
        assert inst.incident[0].index == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            build_instance([ArrangementFunctional((1, 0, 0))], X_AXIS, SKEW)

    def test_plane_factor_unsupported(self):
        plane = span((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1))
        with pytest.raises(UnsupportedFlatError):
            build_instance([], plane, span((0, 0, 1, 0)))

    def test_swap_exchanges_factors(self):
        inst = build_instance([ArrangementFunctional((0, 1, 0, -2))], X_AXIS, SKEW)
        swapped = inst.swapped()
        assert swapped.factor1 == inst.factor2
        assert swapped.functionals[0].factor1 == inst.functionals[0].factor2
        assert swapped.swapped() == inst


class TestCrossingCount:
    def test_single_hyperplane_same_side(self):
        inst = build_instance([ArrangementFunctional((1, 1, 1, 1))], X_AXIS, SKEW)
        # both factor points strictly positive
        assert strict_crossing_count(inst, (1, 0), (1, 0)) == 0

    @hyp.given(strategies.covering_instances((2, 2), dim=3), strategies.nonzero_pairs, strategies.nonzero_pairs)
    def test_antipodal_invariance(self, inst, u1, u2):
        neg1, neg2 = tuple(-c for c in u1), tuple(-c for c in u2)
        assert strict_crossing_count(inst, u1, u2) == strict_crossing_count(inst, neg1, neg2)

    @hyp.given(strategies.covering_instances((2, 2), dim=3), strategies.nonzero_pairs, strategies.nonzero_pairs)
    def test_complement_sum(self, inst, u1, u2):
        neg2 = tuple(-c for c in u2)
        nonzero = sum(1 for h in inst.functionals if h.sign1(u1) != 0 and h.sign2(u2) != 0)
        assert strict_crossing_count(inst, u1, u2) + strict_crossing_count(inst, u1, neg2) == nonzero

    @hyp.given(
        strategies.covering_instances((2, 2), dim=3),
        strategies.nonzero_pairs,
        strategies.nonzero_pairs,
        strategies.positive_scales,
        strategies.positive_scales,
    )
    def test_positive_scaling_invariance(self, inst, u1, u2, s1, s2):
        scaled1 = tuple(s1 * c for c in u1)
        scaled2 = tuple(s2 * c for c in u2)
        assert strict_crossing_count(inst, scaled1, scaled2) == strict_crossing_count(inst, u1, u2)

    def test_count_matches_homogeneous_evaluation(self):
        hs = [ArrangementFunctional((1, 0, 0, -1)), ArrangementFunctional((0, 0, 1, 1))]
        inst = build_instance(hs, X_AXIS, SKEW)
        u1, u2 = (Fraction(1), Fraction(3)), (Fraction(1), Fraction(-2))
        p1, p2 = inst.factor1.point(u1), inst.factor2.point(u2)
        expected = sum(1 for h in hs if h.sign_of(p1) * h.sign_of(p2) == -1)
        assert strict_crossing_count(inst, u1, u2) == expected
