"""
Circle Solver
Factor 1 is a projective point (S0 = {+u, -u}) and factor 2 a projective line (S1).
Antipodal invariance lets us fix u = +b1; hyperplane h is then crossed at u2 iff
u2 lies in the open semicircle where h has the sign opposite to h(u). One
counterclockwise walk over the sorted boundary directions finds the least covered
arc.
"""

import logging
from collections import defaultdict
from typing import Any, Dict, List, Optional, Tuple

from ..exceptions import UnsupportedFlatError
from ..geometry.dual_reduce import CoveringInstance, DepthResult
from ..geometry.exact_core import arc_midpoint, direction_key, integer_scaled, sign
from .base_solver import BaseSolver, build_result
from .segment_tree import sorted_boundaries

logger = logging.getLogger(__name__)


class CircleSolver(BaseSolver):
    """Circular walk on S0 x S1"""

    def __init__(self, solver_config: Optional[Dict[str, Any]] = None):
        super().__init__(name="circle", solver_config=solver_config)
        self.rotation = int(self.solver_config.get("rotation", 0))

    def factor_dims(self) -> Tuple[int, int]:
        return (1, 2)

    def _solve(self, inst: CoveringInstance) -> DepthResult:
        return solve_circle(inst, rotation=self.rotation)


def covering_semicircles(inst: CoveringInstance) -> List[Tuple[int, int]]:
    """Integer (a, b) per active hyperplane: it is crossed at u2 iff a*alpha + b*beta > 0"""
    semicircles = []
    for h in inst.functionals:
        fixed = sign(h.factor1[0])
        a, b = integer_scaled(h.factor2)
        semicircles.append((-fixed * a, -fixed * b))
    return semicircles


def solve_circle(inst: CoveringInstance, rotation: int = 0) -> DepthResult:
    if inst.factor_dims != (1, 2):
        raise UnsupportedFlatError(f"circle solver needs factor dims (1, 2), got {inst.factor_dims}")
    if not inst.functionals:
        return build_result(inst, 0, (1,), (1, 0), "circle")

    semicircles = covering_semicircles(inst)

    # Net change of the count when the walk passes each boundary counterclockwise.
    deltas: Dict[Tuple[int, int], int] = defaultdict(int)
    directions = []
    for a, b in semicircles:
        for wa, wb in ((-b, a), (b, -a)):
            key = direction_key(wa, wb)
            # sign of the semicircle's functional just past w, at w + eps * perp(w)
            deltas[key] += sign(a * -key[1] + b * key[0])
            directions.append((wa, wb))

    boundaries = sorted_boundaries(directions, rotation)
    m = len(boundaries)

    start = arc_midpoint(boundaries[-1], boundaries[0])
    count = sum(1 for a, b in semicircles if a * start.alpha + b * start.beta > 0)
    best, best_arc = count, m - 1
    for i in range(m - 1):
        count += deltas[direction_key(*boundaries[i].coords)]
        if count < best:
            best, best_arc = count, i

    witness = arc_midpoint(boundaries[best_arc], boundaries[(best_arc + 1) % m])
    logger.debug("Circle walk over %d arcs: minimum %d at arc %d", m, best, best_arc)
    return build_result(inst, best, (1,), witness.coords, "circle")
