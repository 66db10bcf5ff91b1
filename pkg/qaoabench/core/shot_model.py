"""Finite-precision estimation and repetition (shot) cost accounting.

Expectation values are computed exactly on the emulator and perturbed by a
uniform term in [-precision, +precision]. Every estimate charges the
repetitions a measurement at that precision would need, M = Var / precision^2,
rounded up with a floor of one repetition. Precision 0 means exact (noiseless)
evaluation at the one-repetition floor.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

import numpy as np

from qaoabench.core.emulator import cost_operator_for, expectation_diagonal, variance_diagonal
from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.gradient_circuit import (
    GeneratorDecomposition,
    GeneratorPosition,
    cost_decomposition,
    flat_index,
    term_measurements,
)
from qaoabench.core.maxcut import MaxCutInstance
from qaoabench.core.qaoa import ParamsLike, analytic_gradient, as_flat, prepare_state
from qaoabench.utils.constants import PRECISION_PRESETS

logger = logging.getLogger(__name__)

# relative slack absorbing round-off before the ceiling (600.0000000001 -> 600)
_CEIL_SLACK = 1e-9


class MethodTag(str, Enum):
    """Optimization method a precision configuration belongs to."""

    NM = "nm"
    FD = "fd"
    AG = "ag"


@dataclass(frozen=True)
class PrecisionConfig:
    """Precision targets of one optimization method.

    Attributes:
        method: Method tag (nm, fd, ag).
        epsilon: Objective precision.
        delta: Finite-difference increment.
        epsilon_ag: Precision of an analytical gradient component.
        exact: Disable noise; every estimate costs the one-repetition floor.
    """

    method: MethodTag = MethodTag.FD
    epsilon: float = 0.01
    delta: float = 0.1
    epsilon_ag: float = 0.1
    exact: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", MethodTag(self.method))
        for name in ("epsilon", "delta", "epsilon_ag"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidArgumentError(f"{name} must be positive, got {value}")

    @classmethod
    def from_preset(cls, name: str, exact: bool = False) -> "PrecisionConfig":
        if name not in PRECISION_PRESETS:
            raise InvalidArgumentError(
                f"Unknown preset {name!r}; choose from {', '.join(PRECISION_PRESETS)}"
            )
        method, epsilon, delta, epsilon_ag = PRECISION_PRESETS[name]
        return cls(MethodTag(method), epsilon, delta, epsilon_ag, exact)

    @property
    def label(self) -> str:
        """Short unique name used in file names and tables."""
        if self.method is MethodTag.NM:
            label = f"nm_e{self.epsilon:g}"
        elif self.method is MethodTag.FD:
            label = f"fd_e{self.epsilon:g}_d{self.delta:g}"
        else:
            label = f"ag_e{self.epsilon:g}_g{self.epsilon_ag:g}"
        return f"{label}_exact" if self.exact else label

    @property
    def objective_precision(self) -> float:
        return 0.0 if self.exact else self.epsilon

    @property
    def gradient_precision(self) -> float:
        return 0.0 if self.exact else self.epsilon_ag

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method.value,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "epsilon_ag": self.epsilon_ag,
            "exact": self.exact,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PrecisionConfig":
        return cls(
            method=MethodTag(data["method"]),
            epsilon=float(data["epsilon"]),
            delta=float(data["delta"]),
            epsilon_ag=float(data["epsilon_ag"]),
            exact=bool(data.get("exact", False)),
        )


class CostCategory(Enum):
    OBJECTIVE = "objective"
    FINITE_DIFFERENCE = "finite_difference"
    ANALYTIC_GRADIENT = "analytic_gradient"


@dataclass
class CostLedger:
    """Running repetition count of one optimization run, split by estimate type."""

    objective: int = 0
    finite_difference: int = 0
    analytic_gradient: int = 0

    @property
    def total_repetitions(self) -> int:
        return self.objective + self.finite_difference + self.analytic_gradient

    def charge(self, category: CostCategory, repetitions: int) -> int:
        """Add repetitions to a category and return the new total."""
        if repetitions < 1:
            raise InvalidArgumentError(f"Every estimate costs at least one repetition, got {repetitions}")
        setattr(self, category.value, getattr(self, category.value) + int(repetitions))
        return self.total_repetitions

    def breakdown(self) -> dict[str, int]:
        return {
            CostCategory.OBJECTIVE.value: self.objective,
            CostCategory.FINITE_DIFFERENCE.value: self.finite_difference,
            CostCategory.ANALYTIC_GRADIENT.value: self.analytic_gradient,
        }


def ceil_repetitions(value: float) -> int:
    """Round a repetition bound up, tolerating float round-off, with a floor of one."""
    return max(1, math.ceil(value - _CEIL_SLACK * max(1.0, abs(value))))


def objective_cost_bound(variance: float, epsilon: float) -> float:
    """Pre-ceiling repetition bound Var / epsilon^2."""
    return variance / epsilon**2


def repetitions_for(variance: float, precision: float) -> int:
    """Repetitions to estimate a mean with the given variance to ``precision``."""
    if precision <= 0:
        return 1
    return ceil_repetitions(objective_cost_bound(variance, precision))


def noisy_value(true_value: float, precision: float, rng: np.random.Generator) -> float:
    """Return true_value + u with u uniform in [-precision, +precision].

    Raises:
        InvalidArgumentError: If precision is negative.
    """
    if precision < 0:
        raise InvalidArgumentError(f"precision must be non-negative, got {precision}")
    if precision == 0:
        return float(true_value)
    return float(true_value + rng.uniform(-precision, precision))


def estimate_objective(
    instance: MaxCutInstance,
    params: ParamsLike,
    epsilon: float,
    ledger: CostLedger,
    rng: np.random.Generator,
) -> float:
    """Noisy F_p at precision epsilon, measuring the clause operator directly."""
    cost = cost_operator_for(instance)
    state = prepare_state(instance, params)
    value = expectation_diagonal(state, cost)
    ledger.charge(CostCategory.OBJECTIVE, repetitions_for(variance_diagonal(state, cost), epsilon))
    return noisy_value(value, epsilon, rng)


def allocate_per_term_shots(
    weights: Sequence[float],
    variances: Sequence[float],
    epsilon: float,
) -> list[int]:
    """Repetitions per term when each of k terms gets precision epsilon / sqrt(k).

    Returns:
        M_nu = ceil(k * c_nu^2 * Var_nu / epsilon^2) per term (at least 1).
    """
    if len(weights) != len(variances):
        raise InvalidArgumentError(
            f"{len(weights)} weights but {len(variances)} variances"
        )
    if epsilon <= 0:
        raise InvalidArgumentError(f"epsilon must be positive, got {epsilon}")
    k = len(weights)
    return [ceil_repetitions(k * c * c * v / epsilon**2) for c, v in zip(weights, variances)]


def estimate_objective_by_terms(
    instance: MaxCutInstance,
    params: ParamsLike,
    epsilon: float,
    ledger: CostLedger,
    rng: np.random.Generator,
) -> float:
    """Noisy F_p with every clause term measured separately.

    The term-wise path of a general ansatz: each term c_nu sigma_nu is
    estimated to precision epsilon / sqrt(k_C) and charged its own M_nu.
    """
    state = prepare_state(instance, params)
    terms = cost_decomposition(instance).terms
    weights = [t.weight for t in terms]
    means = []
    for term in terms:
        mean = float(np.vdot(state.amplitudes, term.apply(state).amplitudes).real)
        means.append(mean)
    variances = [max(1.0 - m * m, 0.0) for m in means]

    if epsilon > 0:
        shots = allocate_per_term_shots(weights, variances, epsilon)
        term_precision = epsilon / math.sqrt(len(terms))
    else:
        shots = [1] * len(terms)
        term_precision = 0.0
    ledger.charge(CostCategory.OBJECTIVE, sum(shots))

    constant = instance.num_clauses / 2.0
    return constant + sum(noisy_value(c * m, term_precision, rng) for c, m in zip(weights, means))


def fd_precision(epsilon: float, delta: float, true_gradient_component: float) -> float:
    """Precision of each shifted objective in a finite difference.

    eps' = max{delta^3, epsilon/10, min{epsilon, (delta/sqrt(2)) |dF|}}
    """
    scaled = delta / math.sqrt(2.0) * abs(true_gradient_component)
    return max(delta**3, epsilon / 10.0, min(epsilon, scaled))


def estimate_fd_gradient(
    instance: MaxCutInstance,
    params: ParamsLike,
    config: PrecisionConfig,
    ledger: CostLedger,
    rng: np.random.Generator,
    precision_override: float | None = None,
) -> np.ndarray:
    """Noisy central finite-difference gradient with adaptive precision.

    Args:
        instance: MAX-CUT instance.
        params: Point at which to differentiate.
        config: Precision configuration (epsilon, delta).
        ledger: Cost ledger charged two objective measurements per component.
        rng: Noise stream.
        precision_override: Fixed precision for both shifted evaluations
            instead of the adaptive rule (0 gives the noiseless difference).

    Returns:
        Array of 2p derivative estimates.
    """
    flat = as_flat(params)
    delta = config.delta
    true_gradient = analytic_gradient(instance, flat)
    cost = cost_operator_for(instance)

    grad = np.zeros(flat.size)
    for index in range(flat.size):
        if config.exact:
            precision = 0.0
        elif precision_override is not None:
            precision = precision_override
        else:
            precision = fd_precision(config.epsilon, delta, true_gradient[index])

        shift = np.zeros(flat.size)
        shift[index] = delta / 2.0
        values = []
        repetitions = 0
        for point in (flat + shift, flat - shift):
            state = prepare_state(instance, point)
            values.append(noisy_value(expectation_diagonal(state, cost), precision, rng))
            repetitions += repetitions_for(variance_diagonal(state, cost), precision)
        ledger.charge(CostCategory.FINITE_DIFFERENCE, repetitions)
        grad[index] = (values[0] - values[1]) / delta
    return grad


def ag_component_cost(terms: Sequence[tuple[float, float, float]], epsilon_ag: float) -> int:
    """Repetitions of one analytical gradient component.

    Every generator term is its own circuit, estimated to eps''/sqrt(k_G).
    The weighted observable 2 g_mu C (x) Z_a then needs
    ceil(k_G * 4 g_mu^2 Var_mu / eps''^2) repetitions, at least one.
    """
    if epsilon_ag <= 0:
        return len(terms)
    k = len(terms)
    return sum(
        ceil_repetitions(objective_cost_bound(4.0 * k * g * g * var, epsilon_ag))
        for g, _, var in terms
    )


def estimate_ag_gradient(
    instance: MaxCutInstance,
    params: ParamsLike,
    config: PrecisionConfig,
    ledger: CostLedger,
    rng: np.random.Generator,
    generators: dict[GeneratorPosition, GeneratorDecomposition] | None = None,
) -> np.ndarray:
    """Noisy analytical gradient from ancilla-circuit term expectations.

    Each weighted term 2 g_mu <C (x) Z_a> is perturbed independently at
    precision eps''/sqrt(k_G), and the component is charged the repetition
    bound of ``ag_component_cost``.

    Args:
        generators: Optional replacement generator decompositions per layer
            type (the QAOA cost and mixer decompositions by default).
    """
    flat = as_flat(params)
    depth = flat.size // 2
    epsilon_ag = config.gradient_precision
    generators = generators or {}

    grad = np.zeros(flat.size)
    for layer_index in range(1, depth + 1):
        for position in GeneratorPosition:
            index = flat_index(layer_index, position, depth)
            terms = term_measurements(
                instance, flat, position, layer_index, generators.get(position)
            )
            if not terms:
                continue
            term_precision = epsilon_ag / math.sqrt(len(terms))
            # zero-weight terms are known exactly and draw no noise
            grad[index] = sum(
                noisy_value(2.0 * g * mean, term_precision if g > 0 else 0.0, rng)
                for g, mean, _ in terms
            )
            ledger.charge(CostCategory.ANALYTIC_GRADIENT, ag_component_cost(terms, epsilon_ag))
    return grad


class NoisyOracle:
    """Objective and gradient estimators of one run, bound to its ledger and stream.

    The optimizers only see the flat-vector callables ``objective`` and
    ``gradient``.
    """

    def __init__(
        self,
        instance: MaxCutInstance,
        config: PrecisionConfig,
        ledger: CostLedger,
        rng: np.random.Generator,
    ):
        self.instance = instance
        self.config = config
        self.ledger = ledger
        self.rng = rng

    def objective(self, x: np.ndarray) -> float:
        return estimate_objective(
            self.instance, x, self.config.objective_precision, self.ledger, self.rng
        )

    def gradient(self, x: np.ndarray) -> np.ndarray:
        if self.config.method is MethodTag.AG:
            return estimate_ag_gradient(self.instance, x, self.config, self.ledger, self.rng)
        if self.config.method is MethodTag.FD:
            return estimate_fd_gradient(self.instance, x, self.config, self.ledger, self.rng)
        raise InvalidArgumentError("Nelder-Mead runs do not use gradient estimates")
