"""Ancilla-assisted gradient circuits.

A layer generator G = sum_mu g_mu sigma_mu is split into weighted Pauli
products. For each term, one (N+1)-qubit circuit prepares

    |psi_mu> = (|gamma,beta> (x) |+>  -  i W sigma_mu W^dagger |gamma,beta> (x) |->) / sqrt(2)

where W is the circuit suffix starting at the differentiated layer. On this
state <sigma_nu (x) Z_a> = -Im <gamma,beta| W sigma_mu W^dagger sigma_nu |gamma,beta>,
so a gradient component is 2 * sum_mu sum_nu g_mu c_nu <sigma_nu (x) Z_a>.
The ancilla is the top qubit (index N).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from qaoabench.core.emulator import (
    DiagonalCostOperator,
    PauliFactor,
    StateVector,
    append_ancilla,
    apply_anticontrolled_unitary,
    apply_cost_phase,
    apply_mixer,
    apply_pauli_product,
    apply_phase_s,
    apply_single_qubit_hadamard,
    apply_single_qubit_x,
    cost_operator_for,
    expectation_diagonal,
    expectation_pauli_product,
    init_plus_state,
    variance_diagonal,
)
from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.maxcut import MaxCutInstance
from qaoabench.core.qaoa import ParamsLike, as_flat

logger = logging.getLogger(__name__)


class GeneratorPosition(Enum):
    """Which layer type of a QAOA block is differentiated."""

    GAMMA = "gamma"
    BETA = "beta"


@dataclass(frozen=True)
class PauliTerm:
    """A weighted term g * sign * P with P a product of Paulis.

    ``sign`` keeps the Pauli product Hermitian and unitary while letting
    the weight stay non-negative (e.g. -Z_u Z_v with weight 1/2).
    """

    weight: float
    paulis: tuple[PauliFactor, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise InvalidArgumentError(f"Term weights must be non-negative, got {self.weight}")
        if self.sign not in (-1, 1):
            raise InvalidArgumentError(f"Term sign must be +1 or -1, got {self.sign}")

    @property
    def is_identity(self) -> bool:
        return not self.paulis

    def apply(self, state: StateVector) -> StateVector:
        """Apply the unitary sign * P (weight excluded)."""
        out = apply_pauli_product(state, self.paulis)
        if self.sign < 0:
            out = StateVector(out.num_qubits, -out.amplitudes)
        return out

    def max_qubit(self) -> int:
        return max((q for q, _ in self.paulis), default=-1)


@dataclass(frozen=True)
class GeneratorDecomposition:
    """A Hermitian operator written as sum_mu g_mu sigma_mu.

    Identity terms are omitted; they never contribute to a gradient
    component because the corresponding overlap is real.
    """

    terms: tuple[PauliTerm, ...]

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def weights(self) -> np.ndarray:
        return np.array([t.weight for t in self.terms])


def cost_decomposition(instance: MaxCutInstance) -> GeneratorDecomposition:
    """Clause operator up to a constant: sum over edges of (1/2)(-Z_u Z_v)."""
    return GeneratorDecomposition(
        tuple(PauliTerm(0.5, ((u, "Z"), (v, "Z")), sign=-1) for u, v in instance.edges)
    )


def mixer_decomposition(num_qubits: int) -> GeneratorDecomposition:
    """Mixer generator B = sum_i X_i."""
    return GeneratorDecomposition(tuple(PauliTerm(1.0, ((q, "X"),)) for q in range(num_qubits)))


def generator_for(instance: MaxCutInstance, position: GeneratorPosition) -> GeneratorDecomposition:
    if position is GeneratorPosition.GAMMA:
        return cost_decomposition(instance)
    return mixer_decomposition(instance.num_nodes)


def flat_index(layer_index: int, position: GeneratorPosition, depth: int) -> int:
    """Map a 1-based layer index and position to the flat parameter index."""
    if not 1 <= layer_index <= depth:
        raise InvalidArgumentError(f"layer_index must be in [1, {depth}], got {layer_index}")
    return 2 * (layer_index - 1) + (0 if position is GeneratorPosition.GAMMA else 1)


def _apply_register_layers(
    state: StateVector,
    register_cost: DiagonalCostOperator,
    flat: np.ndarray,
    start: int,
    stop: int,
    register: Sequence[int],
) -> StateVector:
    for index in range(start, stop):
        if index % 2 == 0:
            state = apply_cost_phase(state, register_cost, flat[index])
        else:
            state = apply_mixer(state, flat[index], qubits=register)
    return state


def build_gradient_circuit_state(
    instance: MaxCutInstance,
    params: ParamsLike,
    layer_index: int,
    term: PauliTerm,
    position: GeneratorPosition,
) -> StateVector:
    """Run the ancilla gradient circuit for one generator term.

    Gate sequence: Hadamard on the ancilla, the layers before the
    differentiated one, sigma_mu anticontrolled on the ancilla, the
    remaining layers, then X, S^dagger and a Hadamard on the ancilla.

    Args:
        instance: MAX-CUT instance (register of N qubits).
        params: QAOA parameters.
        layer_index: 1-based block index n.
        term: Generator term sigma_mu; must act on register qubits only.
        position: Whether the gamma or beta layer of block n is differentiated.

    Returns:
        The (N+1)-qubit state |psi_mu>.

    Raises:
        InvalidArgumentError: On a bad layer index or a term touching the ancilla.
    """
    flat = as_flat(params)
    depth = flat.size // 2
    index = flat_index(layer_index, position, depth)
    n = instance.num_nodes
    if term.max_qubit() >= n:
        raise InvalidArgumentError(f"Term {term.paulis} acts outside the {n}-qubit register")

    ancilla = n
    register = range(n)
    register_cost = cost_operator_for(instance).tensor_ancilla_identity()

    state = append_ancilla(init_plus_state(n))
    state = apply_single_qubit_hadamard(state, ancilla)
    state = _apply_register_layers(state, register_cost, flat, 0, index, register)
    state = apply_anticontrolled_unitary(state, ancilla, term.apply)
    state = _apply_register_layers(state, register_cost, flat, index, flat.size, register)
    state = apply_single_qubit_x(state, ancilla)
    state = apply_phase_s(state, ancilla, adjoint=True)
    return apply_single_qubit_hadamard(state, ancilla)


def measure_term_against(state: StateVector, observable: PauliTerm) -> float:
    """<sign * P_nu (x) Z_a> on a gradient-circuit state (weight excluded)."""
    ancilla = state.num_qubits - 1
    value = expectation_pauli_product(state, observable.paulis + ((ancilla, "Z"),))
    return observable.sign * value


def measure_cost_observable(instance: MaxCutInstance, state: StateVector) -> tuple[float, float]:
    """Mean and variance of the clause-count operator C (x) Z_a.

    The constant part of C does not move the mean, since <Z_a> vanishes on
    every gradient-circuit state, but it does enter the variance and so the
    repetition count.
    """
    observable = cost_operator_for(instance).tensor_ancilla_z()
    return expectation_diagonal(state, observable), variance_diagonal(state, observable)


def term_measurements(
    instance: MaxCutInstance,
    params: ParamsLike,
    position: GeneratorPosition,
    layer_index: int,
    generator: GeneratorDecomposition | None = None,
) -> list[tuple[float, float, float]]:
    """(g_mu, <C (x) Z_a>, Var[C (x) Z_a]) for every generator term of one component.

    The clause operator is measured directly in the computational basis,
    so the sum over its own terms collapses into one observable.
    """
    if generator is None:
        generator = generator_for(instance, position)
    results = []
    for term in generator.terms:
        state = build_gradient_circuit_state(instance, params, layer_index, term, position)
        mean, variance = measure_cost_observable(instance, state)
        results.append((term.weight, mean, variance))
    return results


def circuit_gradient(
    instance: MaxCutInstance,
    params: ParamsLike,
    collapse_cost_sum: bool = True,
) -> np.ndarray:
    """Gradient of F_p assembled from ancilla-circuit expectation values.

    Args:
        instance: MAX-CUT instance.
        params: QAOA parameters.
        collapse_cost_sum: Measure the clause operator as one diagonal
            observable (default). When False, every clause term sigma_nu is
            measured separately and the full double sum is formed.

    Returns:
        Array of 2p derivatives in flat order (gamma_1, beta_1, ...).
    """
    flat = as_flat(params)
    depth = flat.size // 2
    observable = cost_decomposition(instance)
    grad = np.zeros(flat.size)

    for layer_index in range(1, depth + 1):
        for position in GeneratorPosition:
            index = flat_index(layer_index, position, depth)
            if collapse_cost_sum:
                terms = term_measurements(instance, flat, position, layer_index)
                grad[index] = 2.0 * sum(g * mean for g, mean, _ in terms)
                continue
            total = 0.0
            for term in generator_for(instance, position).terms:
                state = build_gradient_circuit_state(instance, flat, layer_index, term, position)
                for cost_term in observable.terms:
                    total += term.weight * cost_term.weight * measure_term_against(state, cost_term)
            grad[index] = 2.0 * total

    return grad
