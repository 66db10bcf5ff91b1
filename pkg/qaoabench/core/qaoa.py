"""QAOA state preparation, objective and gradients.

The flat parameter vector is ordered (gamma_1, beta_1, ..., gamma_p, beta_p),
which is also the order in which the 2p layers act on |s>: flat index k
is a cost layer when k is even and a mixer layer when k is odd.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from qaoabench.core.emulator import (
    DiagonalCostOperator,
    StateVector,
    apply_cost_phase,
    apply_mixer,
    apply_x_sum,
    cost_operator_for,
    expectation_diagonal,
    init_plus_state,
)
from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.maxcut import MaxCutInstance
from qaoabench.utils.constants import BETA_PERIOD, GAMMA_PERIOD

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParameterVector:
    """The 2p QAOA angles of a depth-p circuit."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.gammas) != len(self.betas):
            raise InvalidArgumentError(
                f"gammas ({len(self.gammas)}) and betas ({len(self.betas)}) differ in length"
            )
        if not self.gammas:
            raise InvalidArgumentError("Depth must be at least 1")
        if not all(np.isfinite(self.gammas)) or not all(np.isfinite(self.betas)):
            raise InvalidArgumentError("Parameters must be finite")

    @property
    def depth(self) -> int:
        return len(self.gammas)

    @classmethod
    def zeros(cls, depth: int) -> "ParameterVector":
        return cls((0.0,) * depth, (0.0,) * depth)

    @classmethod
    def from_flat(cls, values: Sequence[float]) -> "ParameterVector":
        flat = [float(v) for v in values]
        if len(flat) % 2:
            raise InvalidArgumentError(f"Flat parameter vector must have even length, got {len(flat)}")
        return cls(tuple(flat[0::2]), tuple(flat[1::2]))

    def to_flat(self) -> np.ndarray:
        flat = np.empty(2 * self.depth)
        flat[0::2] = self.gammas
        flat[1::2] = self.betas
        return flat

    def canonical(self) -> "ParameterVector":
        """Wrap gammas into [0, 2pi) and betas into [0, pi) for reporting."""
        return ParameterVector(
            tuple(float(np.mod(g, GAMMA_PERIOD)) for g in self.gammas),
            tuple(float(np.mod(b, BETA_PERIOD)) for b in self.betas),
        )

    def padded(self, extra_layers: int = 1) -> "ParameterVector":
        """Append identity layers at (gamma, beta) = (0, 0)."""
        return ParameterVector(
            self.gammas + (0.0,) * extra_layers,
            self.betas + (0.0,) * extra_layers,
        )


ParamsLike = Union[ParameterVector, Sequence[float], np.ndarray]
Evaluator = Callable[[np.ndarray], float]


def as_flat(params: ParamsLike) -> np.ndarray:
    """Flat float array view of any accepted parameter form."""
    if isinstance(params, ParameterVector):
        return params.to_flat()
    flat = np.asarray(params, dtype=np.float64).reshape(-1)
    if flat.size == 0 or flat.size % 2:
        raise InvalidArgumentError(f"Flat parameter vector must have even length, got {flat.size}")
    return flat


def apply_layer(
    state: StateVector,
    cost: DiagonalCostOperator,
    flat: np.ndarray,
    index: int,
    inverse: bool = False,
) -> StateVector:
    """Apply (or undo) the layer at flat index ``index``."""
    angle = -flat[index] if inverse else flat[index]
    if index % 2 == 0:
        return apply_cost_phase(state, cost, angle)
    return apply_mixer(state, angle)


def apply_layers(
    state: StateVector,
    cost: DiagonalCostOperator,
    flat: np.ndarray,
    start: int,
    stop: int,
) -> StateVector:
    """Apply layers start..stop-1 in circuit order."""
    for index in range(start, stop):
        state = apply_layer(state, cost, flat, index)
    return state


def prepare_state(instance: MaxCutInstance, params: ParamsLike) -> StateVector:
    """Build V(beta_p)U(gamma_p)...V(beta_1)U(gamma_1)|s>."""
    flat = as_flat(params)
    cost = cost_operator_for(instance)
    return apply_layers(init_plus_state(instance.num_nodes), cost, flat, 0, flat.size)


def objective(instance: MaxCutInstance, params: ParamsLike) -> float:
    """Exact F_p: expected number of satisfied clauses in the QAOA state."""
    return expectation_diagonal(prepare_state(instance, params), cost_operator_for(instance))


def analytic_gradient(instance: MaxCutInstance, params: ParamsLike) -> np.ndarray:
    """Exact gradient of F_p by unwinding the circuit on the emulator.

    Starting from |psi> = |gamma,beta> and |lam> = C|gamma,beta>, layers are
    undone one at a time from the last; after undoing layer k the component
    is -2 Im <psi|G_k|lam>, where G_k is C for cost layers and B for mixers.

    Returns:
        Array of 2p derivatives in flat order.
    """
    flat = as_flat(params)
    cost = cost_operator_for(instance)
    psi = prepare_state(instance, flat)
    lam = StateVector(psi.num_qubits, cost.diag * psi.amplitudes)

    grad = np.zeros(flat.size)
    for index in range(flat.size - 1, -1, -1):
        psi = apply_layer(psi, cost, flat, index, inverse=True)
        lam = apply_layer(lam, cost, flat, index, inverse=True)
        if index % 2 == 0:
            generated = cost.diag * lam.amplitudes
        else:
            generated = apply_x_sum(lam).amplitudes
        grad[index] = -2.0 * np.vdot(psi.amplitudes, generated).imag
    return grad


def finite_difference_gradient(
    instance: MaxCutInstance,
    params: ParamsLike,
    delta: float,
    evaluator: Evaluator | None = None,
) -> np.ndarray:
    """Central finite differences [F(x + delta/2) - F(x - delta/2)] / delta.

    Args:
        instance: MAX-CUT instance.
        params: Point at which to differentiate.
        delta: Total increment between the two evaluation points.
        evaluator: Objective estimator on flat parameters; defaults to the
            exact objective.

    Raises:
        InvalidArgumentError: If delta is not positive.
    """
    if delta <= 0:
        raise InvalidArgumentError(f"delta must be positive, got {delta}")
    flat = as_flat(params)
    evaluate: Evaluator = evaluator or (lambda x: objective(instance, x))

    grad = np.zeros(flat.size)
    for index in range(flat.size):
        shift = np.zeros(flat.size)
        shift[index] = delta / 2.0
        grad[index] = (evaluate(flat + shift) - evaluate(flat - shift)) / delta
    return grad
