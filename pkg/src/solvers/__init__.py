"""
Crossing-Depth Toolkit - Solvers Package
Exact minimum-coverage solvers for the sphere products S0xS0, S0xS1 and S1xS1
"""

from typing import Any, Dict, Optional

from ..exceptions import UnsupportedFlatError
from ..geometry.dual_reduce import CoveringInstance
from .base_solver import BaseSolver, load_solver_config
from .circle_solver import CircleSolver, solve_circle
from .point_pair_solver import PointPairSolver, solve_point_pair
from .segment_tree import CoverageSegmentTree, build_tree, delete_arc, insert_arc
from .torus_solver import TorusSolver, solve_torus

__all__ = [
    "BaseSolver",
    "CircleSolver",
    "PointPairSolver",
    "TorusSolver",
    "CoverageSegmentTree",
    "build_tree",
    "insert_arc",
    "delete_arc",
    "solve_circle",
    "solve_point_pair",
    "solve_torus",
    "load_solver_config",
]

# Solver registry for easy access
SOLVER_REGISTRY = {
    "point_pair": PointPairSolver,
    "circle": CircleSolver,
    "torus": TorusSolver,
}

# Factor hdims -> solver name. (2, 1) runs on the circle solver after swapping factors.
DISPATCH = {
    (1, 1): "point_pair",
    (1, 2): "circle",
    (2, 1): "circle",
    (2, 2): "torus",
}


def get_solver_class(solver_type: str):
    """Get solver class by type name"""
    return SOLVER_REGISTRY.get(solver_type.lower())


def list_available_solvers():
    """List all available solver types"""
    return list(SOLVER_REGISTRY.keys())


def solver_for_instance(
    inst: CoveringInstance, solvers_config: Optional[Dict[str, Any]] = None
) -> BaseSolver:
    """Instantiate the solver matching the instance's factor dimensions"""
    name = DISPATCH.get(inst.factor_dims)
    if name is None:
        raise UnsupportedFlatError(f"no solver for factor dims {inst.factor_dims}")
    config = (solvers_config or {}).get(name, {})
    return SOLVER_REGISTRY[name](solver_config=config)
