"""
Geometry Package for the Crossing-Depth Toolkit
Exact projective primitives and the reduction of crossing-distance queries to covering
"""

from .exact_core import (
    ArrangementFunctional,
    CircleVector,
    HomogeneousPoint,
    ProjectiveFlat,
    Rat,
    arc_midpoint,
    circular_compare,
    evaluate,
    flats_intersect,
    lift_affine,
    lift_direction,
    orthogonal_complement,
    sign_of,
    sort_circular,
    to_rat,
)
from .dual_reduce import (
    CoveringInstance,
    DepthResult,
    IntersectingFlats,
    RestrictedFunctional,
    Witness,
    build_instance,
    dual_flat,
    dual_flat_of_line,
    dual_of_point,
    functional_of_affine_hyperplane,
    strict_crossing_count,
    vertical_infinity_flat,
)

__all__ = [
    "ArrangementFunctional",
    "CircleVector",
    "HomogeneousPoint",
    "ProjectiveFlat",
    "Rat",
    "arc_midpoint",
    "circular_compare",
    "evaluate",
    "flats_intersect",
    "lift_affine",
    "lift_direction",
    "orthogonal_complement",
    "sign_of",
    "sort_circular",
    "to_rat",
    "CoveringInstance",
    "DepthResult",
    "IntersectingFlats",
    "RestrictedFunctional",
    "Witness",
    "build_instance",
    "dual_flat",
    "dual_flat_of_line",
    "dual_of_point",
    "functional_of_affine_hyperplane",
    "strict_crossing_count",
    "vertical_infinity_flat",
]
