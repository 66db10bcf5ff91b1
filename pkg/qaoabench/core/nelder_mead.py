"""Nelder-Mead simplex maximization with plateau-based stopping."""

from __future__ import annotations

import logging
from typing import Callable, Optional

import numpy as np

from qaoabench.config.schema import StoppingConfig
from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.shot_model import CostLedger
from qaoabench.core.trace import OptimizerResult, OptimizerTrace, StopReason

logger = logging.getLogger(__name__)

RHO = 1.0  # reflection
CHI = 2.0  # expansion
PSI = 0.5  # contraction
SIGMA = 0.5  # shrink

_NONZERO_STEP = 0.05
_ZERO_STEP = 0.00025


class PlateauCounter:
    """Counts simplex updates since the best vertex last improved.

    The run is exhausted after dim * alpha non-improving updates, where
    alpha is the halved value whenever the latest improvement was smaller
    than ``threshold``.
    """

    def __init__(self, dim: int, stopping: StoppingConfig, initial_best: float):
        self.dim = dim
        self.alpha = stopping.nm_alpha
        self.alpha_halved = stopping.nm_alpha_halved
        self.threshold = stopping.nm_epsilon_half_threshold
        self.best = initial_best
        self.stalled = 0
        self.last_increment: Optional[float] = None

    @property
    def active_alpha(self) -> int:
        if (
            self.threshold is not None
            and self.last_increment is not None
            and self.last_increment < self.threshold
        ):
            return self.alpha_halved
        return self.alpha

    @property
    def limit(self) -> int:
        return self.dim * self.active_alpha

    @property
    def exhausted(self) -> bool:
        return self.stalled >= self.limit

    def update(self, best_value: float) -> bool:
        """Register the best vertex value after one update; True if it improved."""
        if best_value > self.best:
            self.last_increment = best_value - self.best
            self.best = best_value
            self.stalled = 0
            return True
        self.stalled += 1
        return False


def default_simplex(x0: np.ndarray) -> np.ndarray:
    """Axis-aligned starting simplex around x0 (5% steps, 0.00025 at zero)."""
    dim = x0.size
    simplex = np.tile(x0, (dim + 1, 1)).astype(np.float64)
    for k in range(dim):
        simplex[k + 1, k] = (1 + _NONZERO_STEP) * x0[k] if x0[k] != 0 else _ZERO_STEP
    return simplex


def _sort(simplex: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-values, kind="stable")
    return simplex[order], values[order]


def nelder_mead_maximize(
    estimate_fn: Callable[[np.ndarray], float],
    initial_point: np.ndarray,
    stopping: StoppingConfig,
    ledger: CostLedger,
    simplex: Optional[np.ndarray] = None,
) -> OptimizerResult:
    """Maximize a (possibly noisy) estimator with the Nelder-Mead simplex method.

    Every vertex is estimated exactly once; stored vertex values are never
    re-estimated.

    Args:
        estimate_fn: Objective estimator on flat points.
        initial_point: First vertex of the simplex.
        stopping: Termination rules.
        ledger: Cost ledger charged by ``estimate_fn``; read for the trace.
        simplex: Optional (dim+1, dim) starting simplex whose first row must
            equal ``initial_point``.

    Returns:
        OptimizerResult with the best vertex, its estimate and the trace.

    Raises:
        InvalidArgumentError: If the dimension is below 2 or the simplex is malformed.
        OptimizationError: On a non-finite estimate.
    """
    x0 = np.asarray(initial_point, dtype=np.float64).reshape(-1)
    dim = x0.size
    if dim < 2:
        raise InvalidArgumentError(f"Nelder-Mead needs dimension >= 2, got {dim}")
    simplex = default_simplex(x0) if simplex is None else np.array(simplex, dtype=np.float64)
    if simplex.shape != (dim + 1, dim) or not np.array_equal(simplex[0], x0):
        raise InvalidArgumentError("Simplex must be (dim+1, dim) with the initial point first")

    trace = OptimizerTrace(ledger)
    values = np.empty(dim + 1)
    for j in range(dim + 1):
        values[j] = trace.evaluate(estimate_fn, simplex[j])
        trace.vertex_update(simplex[j], values[j])
    simplex, values = _sort(simplex, values)
    plateau = PlateauCounter(dim, stopping, values[0])

    while True:
        if plateau.exhausted:
            reason = StopReason.NM_PLATEAU
            break
        if trace.iterations >= stopping.nm_max_updates:
            reason = StopReason.NM_MAX_UPDATES
            break

        _simplex_update(estimate_fn, simplex, values, trace)
        trace.iterations += 1
        simplex, values = _sort(simplex, values)
        plateau.update(values[0])

    logger.debug(
        f"Nelder-Mead stopped ({reason.value}) after {trace.iterations} updates, "
        f"best estimate {values[0]:.6f}"
    )
    trace.stop(reason, simplex[0], values[0])
    return OptimizerResult(simplex[0].copy(), float(values[0]), trace)


def _simplex_update(
    fn: Callable[[np.ndarray], float],
    simplex: np.ndarray,
    values: np.ndarray,
    trace: OptimizerTrace,
) -> None:
    """One reflection / expansion / contraction / shrink step on a sorted simplex (in place)."""
    worst = simplex[-1].copy()
    xbar = simplex[:-1].mean(axis=0)

    xr = (1 + RHO) * xbar - RHO * worst
    fr = trace.evaluate(fn, xr)

    if fr > values[0]:
        xe = (1 + RHO * CHI) * xbar - RHO * CHI * worst
        fe = trace.evaluate(fn, xe)
        if fe > fr:
            _replace_worst(simplex, values, xe, fe, trace)
        else:
            _replace_worst(simplex, values, xr, fr, trace)
        return

    if fr > values[-2]:
        _replace_worst(simplex, values, xr, fr, trace)
        return

    if fr > values[-1]:
        xc = (1 + PSI * RHO) * xbar - PSI * RHO * worst
        fc = trace.evaluate(fn, xc)
        if fc >= fr:
            _replace_worst(simplex, values, xc, fc, trace)
            return
    else:
        xcc = (1 - PSI) * xbar + PSI * worst
        fcc = trace.evaluate(fn, xcc)
        if fcc > values[-1]:
            _replace_worst(simplex, values, xcc, fcc, trace)
            return

    for j in range(1, simplex.shape[0]):
        simplex[j] = simplex[0] + SIGMA * (simplex[j] - simplex[0])
        values[j] = trace.evaluate(fn, simplex[j])
        trace.vertex_update(simplex[j], values[j])


def _replace_worst(
    simplex: np.ndarray,
    values: np.ndarray,
    point: np.ndarray,
    value: float,
    trace: OptimizerTrace,
) -> None:
    simplex[-1] = point
    values[-1] = value
    trace.vertex_update(point, value)
