"""
Dual Reduction for the Crossing-Depth Toolkit
Builds the dual arrangement of a point set, the flat at vertical infinity, and the
covering instance on a product of spheres that a crossing-distance query reduces to.

A segment between u1 (on factor 1) and u2 (on factor 2) crosses hyperplane h
exactly when h has strictly opposite signs at u1 and u2, so every query becomes a
sign count over restricted functionals.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..exceptions import DegenerateInputError, DimensionMismatchError, UnsupportedFlatError
from .exact_core import (
    ArrangementFunctional,
    CircleVector,
    HomogeneousPoint,
    ProjectiveFlat,
    RatLike,
    flats_intersect,
    lift_affine,
    orthogonal_complement,
    sign,
    to_rat,
)

logger = logging.getLogger(__name__)

SUPPORTED_HDIMS = (1, 2)

FactorPoint = Union[CircleVector, int, Fraction, Sequence[Fraction]]


# ---------------------------------------------------------------------------
# Dualisation
# ---------------------------------------------------------------------------


def dual_of_point(point: Sequence[RatLike], d: Optional[int] = None) -> ArrangementFunctional:
    """Functional (p, 1): the polar hyperplane of the lifted data point"""
    if d is not None and len(point) != d:
        raise DimensionMismatchError(f"point has {len(point)} coordinates, expected {d}")
    return ArrangementFunctional(lift_affine(point).coords)


def functional_of_affine_hyperplane(normal: Sequence[RatLike], offset: RatLike) -> ArrangementFunctional:
    """Functional (a, -b) whose zeros are the homogeneous points of {a.x = b}"""
    normal = tuple(to_rat(c) for c in normal)
    if all(c == 0 for c in normal):
        raise DegenerateInputError("hyperplane normal must be nonzero")
    return ArrangementFunctional(normal + (-to_rat(offset),))


def vertical_infinity_flat(d: int, k: int) -> ProjectiveFlat:
    """Polar of the response directions at infinity; responses are the last d-k coordinates"""
    if not 0 <= k <= d - 1:
        raise UnsupportedFlatError(f"k={k} outside [0, {d - 1}] for d={d}")
    responses = []
    for axis in range(k, d):
        vector = [Fraction(0)] * (d + 1)
        vector[axis] = Fraction(1)
        responses.append(HomogeneousPoint(tuple(vector)))
    return orthogonal_complement(ProjectiveFlat(tuple(responses)))


def dual_flat(flat: ProjectiveFlat) -> ProjectiveFlat:
    return orthogonal_complement(flat)


def dual_flat_of_line(p: HomogeneousPoint, q: HomogeneousPoint) -> ProjectiveFlat:
    """Flat dual to the line through p and q (hyperplanes containing the line)"""
    if p.same_point(q):
        raise DegenerateInputError("line needs two distinct points")
    return orthogonal_complement(ProjectiveFlat((p, q)))


# ---------------------------------------------------------------------------
# Covering instances
# ---------------------------------------------------------------------------


def restricted_value(values: Sequence[Fraction], coords: Sequence[Fraction]) -> Fraction:
    return sum((v * c for v, c in zip(values, coords)), Fraction(0))


@dataclass(frozen=True)
class RestrictedFunctional:
    """One arrangement functional restricted to the bases of both factors"""

    index: int
    functional: ArrangementFunctional
    factor1: Tuple[Fraction, ...]
    factor2: Tuple[Fraction, ...]

    @property
    def zero1(self) -> bool:
        return all(v == 0 for v in self.factor1)

    @property
    def zero2(self) -> bool:
        return all(v == 0 for v in self.factor2)

    @property
    def identically_zero(self) -> Tuple[bool, bool]:
        return (self.zero1, self.zero2)

    def sign1(self, coords: Sequence[Fraction]) -> int:
        return sign(restricted_value(self.factor1, coords))

    def sign2(self, coords: Sequence[Fraction]) -> int:
        return sign(restricted_value(self.factor2, coords))

    def boundaries(self, factor: int) -> Tuple[CircleVector, CircleVector]:
        """Zeros (-B, A) and (B, -A) of A*alpha + B*beta on a circle factor"""
        a, b = self.factor1 if factor == 1 else self.factor2
        return CircleVector(-b, a), CircleVector(b, -a)

    def swapped(self) -> "RestrictedFunctional":
        return RestrictedFunctional(self.index, self.functional, self.factor2, self.factor1)


@dataclass(frozen=True)
class CoveringInstance:
    """Both flats with fixed bases plus every hyperplane restricted to them"""

    dimension: int
    factor1: ProjectiveFlat
    factor2: ProjectiveFlat
    functionals: Tuple[RestrictedFunctional, ...]
    incident: Tuple[RestrictedFunctional, ...] = ()

    @property
    def incident_count(self) -> int:
        return len(self.incident)

    @property
    def n_active(self) -> int:
        return len(self.functionals)

    @property
    def n(self) -> int:
        return self.n_active + self.incident_count

    @property
    def factor_dims(self) -> Tuple[int, int]:
        return (self.factor1.hdim, self.factor2.hdim)

    def swapped(self) -> "CoveringInstance":
        """Same instance with the two factors exchanged"""
        return CoveringInstance(
            dimension=self.dimension,
            factor1=self.factor2,
            factor2=self.factor1,
            functionals=tuple(f.swapped() for f in self.functionals),
            incident=tuple(f.swapped() for f in self.incident),
        )


@dataclass(frozen=True)
class IntersectingFlats:
    """Marker: the two flats meet, so the crossing distance is zero"""

    factor1: ProjectiveFlat
    factor2: ProjectiveFlat
    n: int


@dataclass(frozen=True)
class Witness:
    """Segment endpoints realising the minimum, in factor and homogeneous coordinates"""

    coords1: Tuple[Fraction, ...]
    coords2: Tuple[Fraction, ...]
    u1: HomogeneousPoint
    u2: HomogeneousPoint


@dataclass(frozen=True)
class DepthResult:
    """Closed distance, strict minimum and incident count of one query"""

    distance: int
    strict_min: int
    incident_count: int
    witness: Optional[Witness] = None
    intersecting: bool = False
    n_active: int = 0
    solver: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.n_active + self.incident_count


def make_witness(inst: CoveringInstance, coords1: FactorPoint, coords2: FactorPoint) -> Witness:
    c1 = factor_coords(coords1, inst.factor1.hdim)
    c2 = factor_coords(coords2, inst.factor2.hdim)
    return Witness(c1, c2, inst.factor1.point(c1), inst.factor2.point(c2))


def intersecting_result(marker: IntersectingFlats) -> DepthResult:
    return DepthResult(
        distance=0,
        strict_min=0,
        incident_count=0,
        intersecting=True,
        n_active=marker.n,
        solver="intersecting",
    )


def _check_hdim(flat: ProjectiveFlat, label: str) -> None:
    if flat.hdim not in SUPPORTED_HDIMS:
        raise UnsupportedFlatError(
            f"{label} has hdim {flat.hdim}: unsupported flat dimension - general (j,k) out of scope"
        )


def build_instance(
    functionals: Iterable[ArrangementFunctional],
    flat1: ProjectiveFlat,
    flat2: ProjectiveFlat,
) -> Union[CoveringInstance, IntersectingFlats]:
    """Restrict every functional to both flats into a covering instance"""
    _check_hdim(flat1, "factor1")
    _check_hdim(flat2, "factor2")
    d = flat1.ambient_dim
    if flat2.ambient_dim != d:
        raise DimensionMismatchError(f"flats in dimensions {d} and {flat2.ambient_dim}")
    functionals = list(functionals)
    for i, h in enumerate(functionals):
        if h.dim != d:
            raise DimensionMismatchError(f"functional {i} has dimension {h.dim}, expected {d}")

    if flats_intersect(flat1, flat2):
        logger.debug("Flats intersect; crossing distance is zero")
        return IntersectingFlats(flat1, flat2, len(functionals))

    active: List[RestrictedFunctional] = []
    incident: List[RestrictedFunctional] = []
    for i, h in enumerate(functionals):
        restricted = RestrictedFunctional(
            index=i,
            functional=h,
            factor1=tuple(h.evaluate(b) for b in flat1.basis),
            factor2=tuple(h.evaluate(b) for b in flat2.basis),
        )
        if restricted.zero1 or restricted.zero2:
            incident.append(restricted)
        else:
            active.append(restricted)

    logger.debug("Built covering instance: %d active, %d incident", len(active), len(incident))
    return CoveringInstance(
        dimension=d,
        factor1=flat1,
        factor2=flat2,
        functionals=tuple(active),
        incident=tuple(incident),
    )


def factor_coords(u: FactorPoint, hdim: int) -> Tuple[Fraction, ...]:
    """Normalise a factor point (CircleVector, +-1 scalar or coordinate tuple)"""
    if isinstance(u, CircleVector):
        coords: Tuple[Fraction, ...] = u.coords
    elif isinstance(u, (int, Fraction)) and not isinstance(u, bool):
        coords = (Fraction(u),)
    else:
        coords = tuple(to_rat(c) for c in u)
    if len(coords) != hdim:
        raise DimensionMismatchError(f"factor point has {len(coords)} coordinates, factor has hdim {hdim}")
    if all(c == 0 for c in coords):
        raise DegenerateInputError("factor point must be nonzero")
    return coords


def strict_crossing_count(inst: CoveringInstance, u1: FactorPoint, u2: FactorPoint) -> int:
    """Active hyperplanes with strictly opposite signs at u1 and u2"""
    c1 = factor_coords(u1, inst.factor1.hdim)
    c2 = factor_coords(u2, inst.factor2.hdim)
    return sum(1 for h in inst.functionals if h.sign1(c1) * h.sign2(c2) == -1)
