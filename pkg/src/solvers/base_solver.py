"""
Base Solver Class for the Crossing-Depth Toolkit
Provides common functionality for all minimum-coverage solvers
"""

import logging
import time
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from ..exceptions import UnsupportedFlatError
from ..geometry.dual_reduce import CoveringInstance, DepthResult, make_witness

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "depth.yaml"


class BaseSolver(ABC):

    def __init__(self, name: str, solver_config: Optional[Dict[str, Any]] = None):
        """
        Initialize base solver

        Args:
            name: Solver name, reported in result metadata
            solver_config: Solver-specific configuration
        """
        self.name = name
        self.solver_config = solver_config or {}
        self.debug_checks = bool(self.solver_config.get("debug_checks", False))

        # Performance tracking
        self.solve_count = 0
        self.average_solve_time = 0.0

    @abstractmethod
    def factor_dims(self) -> Tuple[int, int]:
        """Factor hdims (factor1, factor2) this solver accepts"""
        pass

    @abstractmethod
    def _solve(self, inst: CoveringInstance) -> DepthResult:
        pass

    def accepts(self, inst: CoveringInstance) -> bool:
        return inst.factor_dims == self.factor_dims()

    def solve(self, inst: CoveringInstance) -> DepthResult:
        """Solve one covering instance and record timing"""
        if not self.accepts(inst):
            raise UnsupportedFlatError(
                f"{self.name} expects factor dims {self.factor_dims()}, got {inst.factor_dims}"
            )
        started = time.perf_counter()
        result = self._solve(inst)
        elapsed = time.perf_counter() - started
        self.update_performance_metrics(elapsed)
        logger.debug(
            "%s solved n=%d (active %d) in %.3f ms: strict_min=%d",
            self.name,
            inst.n,
            inst.n_active,
            elapsed * 1000.0,
            result.strict_min,
        )
        return result

    def update_performance_metrics(self, solve_time: float):
        """Update solver performance metrics"""
        self.solve_count += 1
        self.average_solve_time = (
            self.average_solve_time * (self.solve_count - 1) + solve_time
        ) / self.solve_count

    def get_solver_info(self) -> Dict[str, Any]:
        """Get solver information"""
        return {
            "name": self.name,
            "factor_dims": list(self.factor_dims()),
            "solve_count": self.solve_count,
            "average_solve_time": self.average_solve_time,
            "debug_checks": self.debug_checks,
        }


# Utility functions for solvers
def load_solver_config(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """Load solver configuration from YAML file"""
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    except FileNotFoundError:
        return {}
    except Exception as e:
        logger.warning("Could not load solver config %s: %s", path, e)
        return {}


def build_result(inst: CoveringInstance, strict_min: int, coords1, coords2, solver: str) -> DepthResult:
    """Closed distance = strict minimum + incident hyperplanes"""
    return DepthResult(
        distance=strict_min + inst.incident_count,
        strict_min=strict_min,
        incident_count=inst.incident_count,
        witness=make_witness(inst, coords1, coords2),
        n_active=inst.n_active,
        solver=solver,
    )
