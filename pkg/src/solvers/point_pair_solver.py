"""
Point-Pair Solver
Both flats are projective points, so each sphere is S0 = {+b, -b}. By antipodal
invariance only (+b1, +b2) and (+b1, -b2) need evaluating.
"""

from typing import Any, Dict, Optional, Tuple

from ..geometry.dual_reduce import CoveringInstance, DepthResult, strict_crossing_count
from .base_solver import BaseSolver, build_result


class PointPairSolver(BaseSolver):
    """Direct evaluation on S0 x S0"""

    def __init__(self, solver_config: Optional[Dict[str, Any]] = None):
        super().__init__(name="point_pair", solver_config=solver_config)

    def factor_dims(self) -> Tuple[int, int]:
        return (1, 1)

    def _solve(self, inst: CoveringInstance) -> DepthResult:
        return solve_point_pair(inst)


def solve_point_pair(inst: CoveringInstance) -> DepthResult:
    best_sign, best = 1, strict_crossing_count(inst, 1, 1)
    flipped = strict_crossing_count(inst, 1, -1)
    if flipped < best:
        best_sign, best = -1, flipped
    return build_result(inst, best, (1,), (best_sign,), "point_pair")
