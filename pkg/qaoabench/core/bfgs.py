"""BFGS quasi-Newton maximization with a backtracking line search.

The inverse-Hessian approximation is kept for -F (positive definite for a
maximum) and starts from the identity. Line searches use one fresh
estimate per trial point.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Optional

import numpy as np

from qaoabench.config.schema import LineSearchConfig, StoppingConfig
from qaoabench.core.errors import InvalidArgumentError, OptimizationError
from qaoabench.core.shot_model import CostLedger
from qaoabench.core.trace import OptimizerResult, OptimizerTrace, StopReason

logger = logging.getLogger(__name__)

_CURVATURE_EPS = 1e-12


def gradient_floor(dim: int, stopping: StoppingConfig, delta_for_floor: float) -> float:
    """sqrt(dim) * max{scale, delta^2}."""
    return math.sqrt(dim) * max(stopping.bfgs_grad_floor_scale, delta_for_floor**2)


def bfgs_update(h: np.ndarray, s: np.ndarray, y: np.ndarray) -> Optional[np.ndarray]:
    """Inverse-Hessian BFGS update; None when the curvature s.y is not positive."""
    sy = float(s @ y)
    if sy <= _CURVATURE_EPS:
        return None
    rho = 1.0 / sy
    identity = np.eye(s.size)
    a1 = identity - rho * np.outer(s, y)
    a2 = identity - rho * np.outer(y, s)
    return a1 @ h @ a2 + rho * np.outer(s, s)


def backtracking_line_search(
    estimate_fn: Callable[[np.ndarray], float],
    x: np.ndarray,
    fx: float,
    grad: np.ndarray,
    direction: np.ndarray,
    line_search: LineSearchConfig,
    trace: OptimizerTrace,
) -> tuple[Optional[np.ndarray], float]:
    """Shrink the step until f(x + a d) >= f(x) + c a g.d.

    Returns:
        (accepted point, its estimate), or (None, fx) when every trial failed.
    """
    slope = float(grad @ direction)
    step = line_search.line_search_initial_step
    for _ in range(line_search.line_search_max_backtracks):
        trial = x + step * direction
        value = trace.evaluate(estimate_fn, trial)
        if value >= fx + line_search.line_search_c * step * slope:
            return trial, value
        step *= line_search.line_search_contraction
    return None, fx


def _checked_gradient(gradient_fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray) -> np.ndarray:
    grad = np.asarray(gradient_fn(x), dtype=np.float64).reshape(-1)
    if grad.shape != x.shape:
        raise InvalidArgumentError(f"Gradient has shape {grad.shape}, point has {x.shape}")
    if not np.all(np.isfinite(grad)):
        raise OptimizationError(f"Non-finite gradient estimate at {x.tolist()}")
    return grad


def bfgs_maximize(
    estimate_fn: Callable[[np.ndarray], float],
    gradient_fn: Callable[[np.ndarray], np.ndarray],
    initial_point: np.ndarray,
    stopping: StoppingConfig,
    delta_for_floor: float,
    ledger: CostLedger,
    line_search: Optional[LineSearchConfig] = None,
) -> OptimizerResult:
    """Maximize with BFGS directions and backtracking line searches.

    Stops when the gradient estimate norm falls below
    sqrt(dim) * max{bfgs_grad_floor_scale, delta_for_floor^2}, when a line
    search improves the estimate by less than ``bfgs_improvement_tol``
    after at least ``bfgs_min_directions`` (default dim) line searches,
    or after ``bfgs_max_line_searches``.

    Args:
        estimate_fn: Objective estimator on flat points.
        gradient_fn: Gradient estimator on flat points.
        initial_point: Starting point.
        stopping: Termination rules.
        delta_for_floor: Finite-difference increment (0 for analytical gradients).
        ledger: Cost ledger charged by the estimators; read for the trace.
        line_search: Line-search parameters (defaults when None).

    Returns:
        OptimizerResult with the final point, its estimate and the trace.

    Raises:
        OptimizationError: On non-finite estimates.
    """
    line_search = line_search or LineSearchConfig()
    x = np.asarray(initial_point, dtype=np.float64).reshape(-1).copy()
    dim = x.size
    floor = gradient_floor(dim, stopping, delta_for_floor)
    min_directions = stopping.bfgs_min_directions or dim

    trace = OptimizerTrace(ledger)
    fx = trace.evaluate(estimate_fn, x)
    grad = _checked_gradient(gradient_fn, x)
    h = np.eye(dim)

    while True:
        if float(np.linalg.norm(grad)) < floor:
            reason = StopReason.BFGS_GRADIENT_FLOOR
            break
        if trace.iterations >= stopping.bfgs_max_line_searches:
            reason = StopReason.BFGS_MAX_LINE_SEARCHES
            break

        direction = h @ grad
        if float(grad @ direction) <= 0:
            h = np.eye(dim)
            direction = grad.copy()

        trace.line_search_start(x, fx)
        trial, f_trial = backtracking_line_search(
            estimate_fn, x, fx, grad, direction, line_search, trace
        )
        trace.iterations += 1

        if trial is None:
            improvement = 0.0
            h = np.eye(dim)
            trace.line_search_end(x, fx, accepted=False)
        else:
            grad_trial = _checked_gradient(gradient_fn, trial)
            # curvature pair of -F
            updated = bfgs_update(h, trial - x, grad - grad_trial)
            if updated is None:
                logger.debug("Skipping BFGS update: non-positive curvature")
            else:
                h = updated
            improvement = f_trial - fx
            x, fx, grad = trial, f_trial, grad_trial
            trace.line_search_end(x, fx, accepted=True)

        if trace.iterations >= min_directions and improvement < stopping.bfgs_improvement_tol:
            reason = StopReason.BFGS_SMALL_IMPROVEMENT
            break

    logger.debug(
        f"BFGS stopped ({reason.value}) after {trace.iterations} line searches, "
        f"estimate {fx:.6f}"
    )
    trace.stop(reason, x, fx)
    return OptimizerResult(x.copy(), float(fx), trace)
