"""
Brute-Force Oracle for the Crossing-Depth Toolkit
Ground truth that shares no sweep code with the solvers: exhaustive evaluation at
one sample per open cell, a primal Tukey depth that never dualises, a primal
double-wedge recount, and the candidate-line generator used by the catline bound.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from .exceptions import DegenerateInputError
from .geometry.dual_reduce import (
    CoveringInstance,
    DepthResult,
    IntersectingFlats,
    factor_coords,
    intersecting_result,
    make_witness,
    restricted_value,
)
from .geometry.exact_core import (
    ArrangementFunctional,
    CircleVector,
    RatLike,
    arc_midpoint,
    lift_affine,
    sign,
    to_rat,
)
from .solvers.segment_tree import sorted_boundaries

logger = logging.getLogger(__name__)

CLOSED = "closed"
STRICT = "strict"

Point2 = Tuple[Fraction, Fraction]
PrimalLine = Tuple[Point2, Point2]


def cell_midpoints(boundaries: Sequence[CircleVector]) -> List[CircleVector]:
    """One interior direction per open arc of a sorted, antipode-closed boundary list"""
    if not boundaries:
        return [CircleVector(1, 0)]
    m = len(boundaries)
    return [arc_midpoint(boundaries[i], boundaries[(i + 1) % m]) for i in range(m)]


def factor_samples(inst: CoveringInstance, factor: int) -> List[Tuple[Fraction, ...]]:
    """Candidate points of one factor: +-b for S0, a midpoint per cell for S1"""
    flat = inst.factor1 if factor == 1 else inst.factor2
    if flat.hdim == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    directions = [w for h in inst.functionals for w in h.boundaries(factor)]
    return [w.coords for w in cell_midpoints(sorted_boundaries(directions))]


def brute_force_min(inst: Union[CoveringInstance, IntersectingFlats]) -> DepthResult:
    """Exact minimum of the strict crossing count over every pair of cell samples"""
    if isinstance(inst, IntersectingFlats):
        return intersecting_result(inst)

    samples1 = factor_samples(inst, 1)
    samples2 = factor_samples(inst, 2)
    signs1 = [[sign(restricted_value(h.factor1, c)) for h in inst.functionals] for c in samples1]
    signs2 = [[sign(restricted_value(h.factor2, c)) for h in inst.functionals] for c in samples2]

    best: Optional[int] = None
    best_pair = (samples1[0], samples2[0])
    for c1, s1 in zip(samples1, signs1):
        for c2, s2 in zip(samples2, signs2):
            count = sum(1 for a, b in zip(s1, s2) if a * b == -1)
            if best is None or count < best:
                best, best_pair = count, (c1, c2)

    strict_min = best or 0
    return DepthResult(
        distance=strict_min + inst.incident_count,
        strict_min=strict_min,
        incident_count=inst.incident_count,
        witness=make_witness(inst, *best_pair),
        n_active=inst.n_active,
        solver="oracle",
    )


def tukey2_primal(points: Sequence[Sequence[RatLike]], q: Sequence[RatLike]) -> int:
    """Closed-halfplane Tukey depth of q in R^2, computed without duality

    A closed halfplane with q on its boundary and inner normal v holds the points
    with v.(p - q) >= 0. The minimum is attained at a normal not perpendicular to
    any p - q, so we evaluate one normal per open arc between the perpendiculars.
    """
    qx, qy = (to_rat(c) for c in q)
    offsets = []
    coincident = 0
    for p in points:
        dx, dy = to_rat(p[0]) - qx, to_rat(p[1]) - qy
        if dx == 0 and dy == 0:
            coincident += 1
        else:
            offsets.append((dx, dy))
    if not offsets:
        return coincident

    perpendiculars = [w for dx, dy in offsets for w in (CircleVector(-dy, dx), CircleVector(dy, -dx))]
    best = min(
        sum(1 for dx, dy in offsets if v.alpha * dx + v.beta * dy > 0)
        for v in cell_midpoints(sorted_boundaries(perpendiculars))
    )
    return best + coincident


def double_wedge_count(
    points: Sequence[Sequence[RatLike]],
    g1: ArrangementFunctional,
    g2: ArrangementFunctional,
    mode: str = STRICT,
) -> int:
    """Data points inside the double wedge bounded by the zero sets of g1 and g2

    strict counts points where g1 and g2 have opposite nonzero signs; closed also
    counts points on either boundary.
    """
    if mode not in (STRICT, CLOSED):
        raise ValueError(f"unknown mode {mode!r}")
    total = 0
    for p in points:
        lifted = lift_affine(p)
        product = g1.sign_of(lifted) * g2.sign_of(lifted)
        if product == -1 or (mode == CLOSED and product == 0):
            total += 1
    return total


def _perturbation(points: Sequence[Point2], p: Point2, q: Point2) -> Tuple[bool, Fraction]:
    """(is_vertical, delta) keeping every off-line point on its side of the line pq"""
    vertical = p[0] == q[0]
    if vertical:
        # swap roles of the coordinates so the line reads x = y-slope * y + c
        p, q = (p[1], p[0]), (q[1], q[0])
        points = [(y, x) for x, y in points]
    slope = (q[1] - p[1]) / (q[0] - p[0])
    intercept = p[1] - slope * p[0]
    mid = (p[0] + q[0]) / 2
    residuals = [abs(r[1] - slope * r[0] - intercept) for r in points]
    nonzero = [r for r in residuals if r != 0]
    rho = min(nonzero) if nonzero else Fraction(1)
    span = max(abs(r[0] - mid) for r in points)
    return vertical, rho / (4 * (1 + span))


def candidate_lines_2d(points: Sequence[Sequence[RatLike]]) -> List[PrimalLine]:
    """Each line through two distinct data points plus four nearby perturbations"""
    distinct: List[Point2] = []
    seen = set()
    for p in points:
        point = (to_rat(p[0]), to_rat(p[1]))
        if point not in seen:
            seen.add(point)
            distinct.append(point)
    if len(distinct) < 2:
        raise DegenerateInputError("candidate lines need at least 2 distinct points")

    candidates: List[PrimalLine] = []
    for p, q in combinations(distinct, 2):
        vertical, delta = _perturbation(distinct, p, q)
        mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        candidates.append((p, q))
        if vertical:
            candidates.append(((p[0] + delta, p[1]), (q[0] + delta, q[1])))
            candidates.append(((p[0] - delta, p[1]), (q[0] - delta, q[1])))
            candidates.append((mid, (mid[0] + delta, mid[1] + 1)))
            candidates.append((mid, (mid[0] - delta, mid[1] + 1)))
        else:
            slope = (q[1] - p[1]) / (q[0] - p[0])
            candidates.append(((p[0], p[1] + delta), (q[0], q[1] + delta)))
            candidates.append(((p[0], p[1] - delta), (q[0], q[1] - delta)))
            candidates.append((mid, (mid[0] + 1, mid[1] + slope + delta)))
            candidates.append((mid, (mid[0] + 1, mid[1] + slope - delta)))
    logger.debug("Generated %d candidate lines from %d distinct points", len(candidates), len(distinct))
    return candidates


def recount_strict(inst: CoveringInstance, coords1, coords2) -> int:
    """Strict crossing count at factor coordinates, recomputed from the raw functionals"""
    u1 = inst.factor1.point(factor_coords(coords1, inst.factor1.hdim))
    u2 = inst.factor2.point(factor_coords(coords2, inst.factor2.hdim))
    return sum(
        1
        for h in inst.functionals + inst.incident
        if h.functional.sign_of(u1) * h.functional.sign_of(u2) == -1
    )
