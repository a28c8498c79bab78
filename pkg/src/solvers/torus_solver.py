"""
Torus Solver
Both flats are projective lines, so the segments between them are double covered
by the torus S1 x S1. We sweep factor 1 and keep, for every hyperplane h, the arc
of factor 2 on which h has the sign opposite to h(u1). The arcs live in a coverage
segment tree whose root holds the least covered cell under the sweep line; each
boundary crossed on factor 1 swaps one arc for its complement.
"""

import logging
from collections import defaultdict
from typing import Any, Dict, List, Optional, Tuple

from ..exceptions import UnsupportedFlatError
from ..geometry.dual_reduce import CoveringInstance, DepthResult
from ..geometry.exact_core import CircleVector, arc_midpoint, integer_scaled, sign
from .base_solver import BaseSolver, build_result
from .segment_tree import CoverageSegmentTree, sorted_boundaries

logger = logging.getLogger(__name__)


class TorusSolver(BaseSolver):
    """Segment-tree sweep on S1 x S1, O(n log n)"""

    def __init__(self, solver_config: Optional[Dict[str, Any]] = None):
        super().__init__(name="torus", solver_config=solver_config)
        self.reverse = bool(self.solver_config.get("reverse", False))
        self.rotation = int(self.solver_config.get("rotation", 0))

    def factor_dims(self) -> Tuple[int, int]:
        return (2, 2)

    def _solve(self, inst: CoveringInstance) -> DepthResult:
        return solve_torus(inst, reverse=self.reverse, rotation=self.rotation, debug_checks=self.debug_checks)


def solve_torus(
    inst: CoveringInstance,
    reverse: bool = False,
    rotation: int = 0,
    debug_checks: bool = False,
) -> DepthResult:
    """Minimum strict crossing count over the open cells of the torus

    Args:
        inst: covering instance whose factors are both 2-dimensional
        reverse: sweep factor 1 clockwise instead of counterclockwise
        rotation: cut the factor-2 circle `rotation` gaps further along
        debug_checks: recompute the whole tree after every mutation
    """
    if inst.factor_dims != (2, 2):
        raise UnsupportedFlatError(f"torus solver needs factor dims (2, 2), got {inst.factor_dims}")
    if not inst.functionals:
        return build_result(inst, 0, (1, 0), (1, 0), "torus")

    first = [integer_scaled(h.factor1) for h in inst.functionals]
    second = [integer_scaled(h.factor2) for h in inst.functionals]

    # Events on factor 1: every hyperplane changes sign at both ends of its zero axis.
    crossings: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for idx, (a, b) in enumerate(first):
        crossings[CircleVector(-b, a).axis_key()].append(idx)
    events = sorted_boundaries(w for a, b in crossings for w in ((a, b), (-a, -b)))

    tree = CoverageSegmentTree.from_directions(
        (w for a, b in second for w in ((-b, a), (b, -a))),
        rotation=rotation,
        debug_checks=debug_checks,
    )
    positive = [tree.arc_range(a, b) for a, b in second]
    negative = [tree.arc_range(-a, -b) for a, b in second]

    # Start in the gap that wraps from the last event to the first.
    k = len(events)
    start = arc_midpoint(events[-1], events[0])
    side = [sign(a * start.alpha + b * start.beta) for a, b in first]

    def active_arc(idx: int) -> Tuple[int, int]:
        return negative[idx] if side[idx] > 0 else positive[idx]

    for idx in range(len(first)):
        tree.insert_range(*active_arc(idx))

    best = tree.root_min
    best_gap = (events[-1], events[0])
    best_leaf = tree.min_leaf()

    if reverse:
        order = [(i, (events[i - 1], events[i])) for i in range(k - 1, 0, -1)]
    else:
        order = [(i, (events[i], events[i + 1])) for i in range(k - 1)]

    for i, gap in order:
        for idx in crossings[events[i].axis_key()]:
            tree.delete_range(*active_arc(idx))
            side[idx] = -side[idx]
            tree.insert_range(*active_arc(idx))
        if tree.root_min < best:
            best = tree.root_min
            best_gap = gap
            best_leaf = tree.min_leaf()

    u1 = arc_midpoint(*best_gap)
    u2 = tree.leaf_midpoint(best_leaf)
    logger.debug(
        "Torus sweep over %d events and %d leaves: minimum %d", k, tree.num_leaves, best
    )
    return build_result(inst, best, u1.coords, u2.coords, "torus")
