"""Hypothesis strategies shared by the test modules"""

from fractions import Fraction

import hypothesis as hyp
import hypothesis.strategies as hys

from src.geometry.dual_reduce import CoveringInstance, build_instance
from src.geometry.exact_core import ArrangementFunctional, CircleVector, ProjectiveFlat, lift_affine

# Small ranges on purpose: they produce coincident boundaries and incidences.
coordinates = hys.integers(min_value=-6, max_value=6)
rationals = hys.fractions(min_value=-20, max_value=20, max_denominator=12)
positive_scales = hys.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8)
seeds = hys.integers(min_value=0, max_value=2**32 - 1)

nonzero_pairs = hys.tuples(coordinates, coordinates).filter(lambda v: v != (0, 0))
circle_vectors = nonzero_pairs.map(lambda v: CircleVector(*v))


def points(dim, min_size=0, max_size=12):
    return hys.lists(hys.tuples(*[coordinates] * dim), min_size=min_size, max_size=max_size)


def functionals(dim, min_size=0, max_size=10):
    coeffs = hys.tuples(*[coordinates] * (dim + 1)).filter(any)
    return hys.lists(coeffs.map(ArrangementFunctional), min_size=min_size, max_size=max_size)


@hys.composite
def affine_flats(draw, dim, hdim):
    """Point (hdim 1) or line (hdim 2) through distinct integer points"""
    chosen = draw(hys.lists(hys.tuples(*[coordinates] * dim), min_size=hdim, max_size=hdim, unique=True))
    return ProjectiveFlat(tuple(lift_affine(p) for p in chosen))


@hys.composite
def covering_instances(draw, dims, dim=3, max_hyperplanes=10):
    """Non-intersecting covering instance with the given factor hdims"""
    flat1 = draw(affine_flats(dim, dims[0]))
    flat2 = draw(affine_flats(dim, dims[1]))
    hs = draw(functionals(dim, max_size=max_hyperplanes))
    inst = build_instance(hs, flat1, flat2)
    hyp.assume(isinstance(inst, CoveringInstance))
    return inst


def factor_point(hdim):
    if hdim == 1:
        return hys.sampled_from([(1,), (-1,)])
    return nonzero_pairs
