"""
Crossing-Depth Engine
Public facade: maps crossing-distance, regression-depth and Tukey-depth queries onto
the covering reduction and the solvers, and turns dual witnesses into primal
double wedges.

Example:
    >>> from src.depth_api import tukey_depth2
    >>> tukey_depth2([(1, 0), (-1, 0), (0, 1), (0, -1)], (0, 0)).distance
    2
"""

import logging
import os
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from dotenv import load_dotenv

from .exceptions import (
    ConfigurationError,
    DegenerateInputError,
    DimensionMismatchError,
    UnsupportedFlatError,
)
from .geometry.dual_reduce import (
    CoveringInstance,
    DepthResult,
    IntersectingFlats,
    Witness,
    build_instance,
    dual_flat,
    dual_of_point,
    functional_of_affine_hyperplane,
    intersecting_result,
    vertical_infinity_flat,
)
from .geometry.exact_core import (
    ArrangementFunctional,
    HomogeneousPoint,
    ProjectiveFlat,
    RatLike,
    lift_affine,
    lift_direction,
    to_rat,
)
from .solvers import solver_for_instance
from .solvers.base_solver import load_solver_config

logger = logging.getLogger(__name__)

HEADLINES = ("closed", "strict")

PointLike = Sequence[RatLike]


# ---------------------------------------------------------------------------
# Flats and witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineFlatSpec:
    """User-facing 0-flat or 1-flat: points, point + direction, or raw homogeneous basis"""

    points: Tuple[Tuple[Fraction, ...], ...] = ()
    direction: Optional[Tuple[Fraction, ...]] = None
    homogeneous: Optional[Tuple[Tuple[Fraction, ...], ...]] = None

    def __post_init__(self):
        points = tuple(tuple(to_rat(c) for c in p) for p in self.points)
        direction = tuple(to_rat(c) for c in self.direction) if self.direction is not None else None
        homogeneous = (
            tuple(tuple(to_rat(c) for c in v) for v in self.homogeneous)
            if self.homogeneous is not None
            else None
        )
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "homogeneous", homogeneous)

        if homogeneous is not None:
            if points or direction is not None:
                raise DegenerateInputError("homogeneous flats take no points or direction")
            if not 1 <= len(homogeneous) <= 2:
                raise UnsupportedFlatError("flat needs 1 or 2 homogeneous vectors")
            return
        if direction is not None and len(points) != 1:
            raise DegenerateInputError("point + direction needs exactly one point")
        if not 1 <= len(points) <= 2:
            raise UnsupportedFlatError(f"flat given by {len(points)} points: only points and lines are supported")
        arities = {len(p) for p in points} | ({len(direction)} if direction is not None else set())
        if len(arities) != 1:
            raise DimensionMismatchError("flat coordinates of different arity")
        if len(points) == 2 and points[0] == points[1]:
            raise DegenerateInputError("line needs two distinct points")
        if direction is not None and all(c == 0 for c in direction):
            raise DegenerateInputError("line direction must be nonzero")

    @classmethod
    def from_points(cls, *points: PointLike) -> "AffineFlatSpec":
        return cls(points=tuple(tuple(p) for p in points))

    @classmethod
    def from_point_direction(cls, point: PointLike, direction: PointLike) -> "AffineFlatSpec":
        return cls(points=(tuple(point),), direction=tuple(direction))

    @classmethod
    def from_homogeneous(cls, *vectors: PointLike) -> "AffineFlatSpec":
        return cls(homogeneous=tuple(tuple(v) for v in vectors))

    @classmethod
    def from_slope_intercept(cls, slope: RatLike, intercept: RatLike) -> "AffineFlatSpec":
        """Non-vertical line y = slope * x + intercept in R^2"""
        slope, intercept = to_rat(slope), to_rat(intercept)
        return cls(points=((Fraction(0), intercept), (Fraction(1), slope + intercept)))

    @property
    def dimension(self) -> int:
        """Ambient dimension d"""
        if self.homogeneous is not None:
            return len(self.homogeneous[0]) - 1
        return len(self.points[0])

    @property
    def flat_dim(self) -> int:
        if self.homogeneous is not None:
            return len(self.homogeneous) - 1
        return len(self.points) - 1 + (1 if self.direction is not None else 0)

    def to_projective(self) -> ProjectiveFlat:
        if self.homogeneous is not None:
            return ProjectiveFlat(tuple(HomogeneousPoint(v) for v in self.homogeneous))
        basis = [lift_affine(p) for p in self.points]
        if self.direction is not None:
            basis.append(lift_direction(self.direction))
        return ProjectiveFlat(tuple(basis))


FlatLike = Union[AffineFlatSpec, PointLike, Sequence[PointLike]]


def as_flat_spec(flat: FlatLike) -> AffineFlatSpec:
    """Accept an AffineFlatSpec, a single point, or a pair of points"""
    if isinstance(flat, AffineFlatSpec):
        return flat
    items = list(flat)
    if items and isinstance(items[0], (list, tuple)):
        return AffineFlatSpec.from_points(*items)
    return AffineFlatSpec.from_points(items)


@dataclass(frozen=True)
class PrimalHyperplane:
    """Hyperplane {coeffs . x = rhs}; coeffs all zero means the hyperplane at infinity"""

    coeffs: Tuple[Fraction, ...]
    rhs: Fraction
    is_at_infinity: bool

    def functional(self) -> ArrangementFunctional:
        return ArrangementFunctional(self.coeffs + (-self.rhs,))


@dataclass(frozen=True)
class PrimalWitness:
    """Double wedge certifying a depth value: one boundary per dual witness point"""

    hyperplanes: Tuple[PrimalHyperplane, PrimalHyperplane]
    count: int


def polar_hyperplane(u: HomogeneousPoint) -> PrimalHyperplane:
    coeffs = u.coords[:-1]
    return PrimalHyperplane(
        coeffs=coeffs,
        rhs=-u.coords[-1],
        is_at_infinity=all(c == 0 for c in coeffs),
    )


def witness_to_primal(u1: HomogeneousPoint, u2: HomogeneousPoint, count: int = 0) -> PrimalWitness:
    """Polar hyperplanes of the two witness points"""
    return PrimalWitness(hyperplanes=(polar_hyperplane(u1), polar_hyperplane(u2)), count=count)


@dataclass(frozen=True)
class DepthReport:
    """DepthResult plus primal certificate and the headline convention in force"""

    result: DepthResult
    primal_witness: Optional[PrimalWitness]
    instance: Union[CoveringInstance, IntersectingFlats]
    query: str
    headline: str = "closed"

    @property
    def distance(self) -> int:
        return self.result.strict_min if self.headline == "strict" else self.result.distance

    @property
    def strict_min(self) -> int:
        return self.result.strict_min

    @property
    def incident_count(self) -> int:
        return self.result.incident_count

    @property
    def witness(self) -> Optional[Witness]:
        return self.result.witness


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


class DepthEngine:
    def __init__(
        self,
        config_path: Optional[Path] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ):
        self.config = load_solver_config(config_path)
        self.config.update(overrides or {})
        self._setup_runtime_config()
        logger.debug(
            "Initialized depth engine (headline=%s, debug_checks=%s)", self.headline, self.debug_checks
        )

    def _setup_runtime_config(self) -> None:

        load_dotenv()

        headline = os.getenv("DEPTH_HEADLINE", self.config.get("headline", "closed")).lower()
        if headline not in HEADLINES:
            raise ConfigurationError(f"Unsupported headline convention: {headline}")
        self.headline = headline

        debug = os.getenv("DEPTH_DEBUG_CHECKS")
        if debug is not None:
            self.debug_checks = debug.strip().lower() in ("1", "true", "yes", "on")
        else:
            self.debug_checks = bool(self.config.get("debug_checks", False))

        coord_bound = os.getenv("DEPTH_COORD_BOUND")
        if coord_bound:
            try:
                bound = int(coord_bound)
            except ValueError:
                raise ConfigurationError(f"DEPTH_COORD_BOUND must be an integer, got {coord_bound!r}") from None
            self.config["generator"] = {**(self.config.get("generator") or {}), "coord_bound": bound}

        log_level = os.getenv("DEPTH_LOG_LEVEL")
        if log_level:
            self.config["log_level"] = log_level

        self.solvers_config: Dict[str, Dict[str, Any]] = {}
        for name, options in (self.config.get("solvers") or {}).items():
            merged = dict(options or {})
            merged.setdefault("debug_checks", self.debug_checks)
            self.solvers_config[name] = merged
        for name in ("point_pair", "circle", "torus"):
            self.solvers_config.setdefault(name, {"debug_checks": self.debug_checks})

    # -- dispatch ---------------------------------------------------------

    def solve_instance(self, inst: Union[CoveringInstance, IntersectingFlats]) -> DepthResult:
        """Run the solver matching the factor dimensions"""
        if isinstance(inst, IntersectingFlats):
            return intersecting_result(inst)
        solver = solver_for_instance(inst, self.solvers_config)
        if inst.factor_dims == (2, 1):
            result = solver.solve(inst.swapped())
            w = result.witness
            return replace(result, witness=Witness(w.coords2, w.coords1, w.u2, w.u1))
        return solver.solve(inst)

    # -- queries ----------------------------------------------------------

    def crossing_distance(
        self,
        hyperplanes: Sequence[Union[ArrangementFunctional, Tuple[PointLike, RatLike]]],
        flat_a: FlatLike,
        flat_b: FlatLike,
    ) -> DepthReport:
        """Fewest hyperplane crossings along a segment from flat_a to flat_b"""
        spec_a, spec_b = as_flat_spec(flat_a), as_flat_spec(flat_b)
        if spec_a.dimension != spec_b.dimension:
            raise DimensionMismatchError(f"flats in R^{spec_a.dimension} and R^{spec_b.dimension}")
        functionals = [
            h if isinstance(h, ArrangementFunctional) else functional_of_affine_hyperplane(*h)
            for h in hyperplanes
        ]
        inst = build_instance(functionals, spec_a.to_projective(), spec_b.to_projective())
        result = self.solve_instance(inst)
        logger.info("crossdist: n=%d distance=%d (%s)", len(functionals), result.distance, result.solver)
        return DepthReport(result, None, inst, "crossdist", self.headline)

    def regression_depth(self, points: Sequence[PointLike], flat: FlatLike, query: str = "depth") -> DepthReport:
        """Crossing distance between the dual of `flat` and the flat at vertical infinity"""
        spec = as_flat_spec(flat)
        d, k = spec.dimension, spec.flat_dim
        for i, p in enumerate(points):
            if len(p) != d:
                raise DimensionMismatchError(f"point {i} has {len(p)} coordinates, expected {d}")
        functionals = [dual_of_point(p) for p in points]
        inst = build_instance(functionals, dual_flat(spec.to_projective()), vertical_infinity_flat(d, k))
        result = self.solve_instance(inst)

        primal = None
        if result.witness is not None:
            primal = witness_to_primal(result.witness.u1, result.witness.u2, result.strict_min)
        logger.info("%s: n=%d d=%d distance=%d (%s)", query, len(points), d, result.distance, result.solver)
        return DepthReport(result, primal, inst, query, self.headline)

    def regression_depth_line3(self, points: Sequence[PointLike], line: FlatLike) -> DepthReport:
        spec = as_flat_spec(line)
        if spec.dimension != 3 or spec.flat_dim != 1:
            raise UnsupportedFlatError("depth-line3 needs a line in R^3")
        return self.regression_depth(points, spec, "depth-line3")

    def regression_depth_line2(self, points: Sequence[PointLike], line: FlatLike) -> DepthReport:
        spec = as_flat_spec(line)
        if spec.dimension != 2 or spec.flat_dim != 1:
            raise UnsupportedFlatError("depth-line2 needs a line in R^2")
        return self.regression_depth(points, spec, "depth-line2")

    def tukey_depth2(self, points: Sequence[PointLike], q: PointLike) -> DepthReport:
        spec = AffineFlatSpec.from_points(q)
        if spec.dimension != 2:
            raise UnsupportedFlatError("tukey2 needs a point in R^2")
        return self.regression_depth(points, spec, "tukey2")


_default_engine: Optional[DepthEngine] = None


def default_engine() -> DepthEngine:
    global _default_engine
    if _default_engine is None:
        _default_engine = DepthEngine()
    return _default_engine


def crossing_distance(hyperplanes, flat_a: FlatLike, flat_b: FlatLike) -> DepthReport:
    return default_engine().crossing_distance(hyperplanes, flat_a, flat_b)


def regression_depth_line3(points: Sequence[PointLike], line: FlatLike) -> DepthReport:
    return default_engine().regression_depth_line3(points, line)


def regression_depth_line2(points: Sequence[PointLike], line: FlatLike) -> DepthReport:
    return default_engine().regression_depth_line2(points, line)


def tukey_depth2(points: Sequence[PointLike], q: PointLike) -> DepthReport:
    return default_engine().tukey_depth2(points, q)
