"""Dense state-vector emulation of qubit registers.

Qubit i is bit i of the basis index. A clear bit means z_i = +1 (the
|0> state), a set bit means z_i = -1. Gate functions never modify their
input; they return a new StateVector.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from qaoabench.core.errors import CapacityError, InvalidArgumentError
from qaoabench.core.maxcut import MaxCutInstance, cut_values
from qaoabench.utils.constants import MAX_EMULATOR_QUBITS, MAX_EMULATOR_QUBITS_WITH_ANCILLA

logger = logging.getLogger(__name__)

PauliFactor = tuple[int, str]
RegisterUnitary = Callable[["StateVector"], "StateVector"]

_SQRT_HALF = np.sqrt(0.5)


@dataclass
class StateVector:
    """Complex amplitudes of a num_qubits register."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise InvalidArgumentError(
                f"Expected {1 << self.num_qubits} amplitudes for {self.num_qubits} qubits, "
                f"got shape {self.amplitudes.shape}"
            )

    @property
    def dimension(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())


@dataclass(frozen=True, eq=False)
class DiagonalCostOperator:
    """An observable diagonal in the computational basis.

    For a MAX-CUT instance the diagonal holds the satisfied-clause count
    of every basis state.
    """

    diag: np.ndarray

    @property
    def num_qubits(self) -> int:
        return int(self.diag.shape[0]).bit_length() - 1

    @classmethod
    def from_instance(cls, instance: MaxCutInstance) -> "DiagonalCostOperator":
        n = instance.num_nodes
        _check_capacity(n, MAX_EMULATOR_QUBITS)
        indices = np.arange(1 << n, dtype=np.int64)
        diag = cut_values(n, instance.edges, indices).astype(np.float64)
        diag.setflags(write=False)
        return cls(diag)

    def shifted(self, offset: float) -> "DiagonalCostOperator":
        """Return the operator plus ``offset`` times the identity."""
        return DiagonalCostOperator(self.diag + offset)

    def tensor_ancilla_identity(self) -> "DiagonalCostOperator":
        """Return this operator acting on the register of a state with one extra (top) qubit."""
        return DiagonalCostOperator(np.concatenate([self.diag, self.diag]))

    def tensor_ancilla_z(self) -> "DiagonalCostOperator":
        """Return this operator tensored with Z on one extra (top) qubit."""
        return DiagonalCostOperator(np.concatenate([self.diag, -self.diag]))


@functools.lru_cache(maxsize=32)
def cost_operator_for(instance: MaxCutInstance) -> DiagonalCostOperator:
    """Clause-count operator of an instance, built once and cached."""
    logger.debug(f"Building cost diagonal for instance {instance.instance_id} (N={instance.num_nodes})")
    return DiagonalCostOperator.from_instance(instance)


def _check_capacity(num_qubits: int, limit: int) -> None:
    if num_qubits < 1:
        raise InvalidArgumentError(f"num_qubits must be >= 1, got {num_qubits}")
    if num_qubits > limit:
        raise CapacityError(f"Dense emulation limited to {limit} qubits, requested {num_qubits}")


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.num_qubits:
        raise InvalidArgumentError(
            f"Qubit index {qubit} out of range for a {state.num_qubits}-qubit register"
        )


def _check_dimension(state: StateVector, cost: DiagonalCostOperator) -> None:
    if cost.diag.shape[0] != state.dimension:
        raise InvalidArgumentError(
            f"Operator dimension {cost.diag.shape[0]} does not match state dimension {state.dimension}"
        )


def _pair_view(amplitudes: np.ndarray, qubit: int) -> np.ndarray:
    # axis 1 is the target qubit's bit value
    return amplitudes.reshape(-1, 2, 1 << qubit)


def _apply_matrix(state: StateVector, qubit: int, matrix: np.ndarray) -> StateVector:
    _check_qubit(state, qubit)
    view = _pair_view(state.amplitudes, qubit)
    out = np.einsum("ij,ajb->aib", matrix, view)
    return StateVector(state.num_qubits, out.reshape(-1))


# =============================================================================
# State preparation
# =============================================================================


def init_plus_state(num_qubits: int) -> StateVector:
    """Uniform superposition |s> = |+>^N.

    Raises:
        CapacityError: Above the dense-emulation guard.
    """
    _check_capacity(num_qubits, MAX_EMULATOR_QUBITS)
    dim = 1 << num_qubits
    return StateVector(num_qubits, np.full(dim, dim ** -0.5, dtype=np.complex128))


def init_basis_state(num_qubits: int, index: int = 0) -> StateVector:
    _check_capacity(num_qubits, MAX_EMULATOR_QUBITS_WITH_ANCILLA)
    amplitudes = np.zeros(1 << num_qubits, dtype=np.complex128)
    amplitudes[index] = 1.0
    return StateVector(num_qubits, amplitudes)


def append_ancilla(state: StateVector) -> StateVector:
    """Add one qubit in |0> as the new highest-index qubit."""
    _check_capacity(state.num_qubits + 1, MAX_EMULATOR_QUBITS_WITH_ANCILLA)
    zeros = np.zeros_like(state.amplitudes)
    return StateVector(state.num_qubits + 1, np.concatenate([state.amplitudes, zeros]))


# =============================================================================
# QAOA layers
# =============================================================================


def apply_cost_phase(state: StateVector, cost: DiagonalCostOperator, gamma: float) -> StateVector:
    """Apply exp(-i gamma C) for a diagonal C."""
    _check_dimension(state, cost)
    return StateVector(state.num_qubits, state.amplitudes * np.exp(-1j * gamma * cost.diag))


def apply_mixer(
    state: StateVector,
    beta: float,
    qubits: Sequence[int] | None = None,
) -> StateVector:
    """Apply exp(-i beta X) to every qubit (the transverse-field mixer).

    ``qubits`` restricts the mixer to a register inside a larger state.
    """
    c, s = np.cos(beta), np.sin(beta)
    amplitudes = state.amplitudes
    targets = range(state.num_qubits) if qubits is None else qubits
    for qubit in targets:
        _check_qubit(state, qubit)
        view = _pair_view(amplitudes, qubit)
        a0, a1 = view[:, 0, :], view[:, 1, :]
        out = np.empty_like(view)
        out[:, 0, :] = c * a0 - 1j * s * a1
        out[:, 1, :] = -1j * s * a0 + c * a1
        amplitudes = out.reshape(-1)
    return StateVector(state.num_qubits, amplitudes)


# =============================================================================
# Single-qubit and controlled gates
# =============================================================================

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT_HALF
_S = np.array([[1, 0], [0, 1j]], dtype=np.complex128)
_S_DAG = np.array([[1, 0], [0, -1j]], dtype=np.complex128)

PAULI_MATRICES = {"X": _X, "Y": _Y, "Z": _Z}


def apply_single_qubit_x(state: StateVector, qubit: int) -> StateVector:
    return _apply_matrix(state, qubit, _X)


def apply_single_qubit_hadamard(state: StateVector, qubit: int) -> StateVector:
    return _apply_matrix(state, qubit, _H)


def apply_phase_s(state: StateVector, qubit: int, adjoint: bool = False) -> StateVector:
    """Apply the phase gate S = diag(1, i), or S^dagger when ``adjoint``."""
    return _apply_matrix(state, qubit, _S_DAG if adjoint else _S)


def apply_pauli_product(state: StateVector, paulis: Sequence[PauliFactor]) -> StateVector:
    """Apply a product of single-qubit Paulis given as (qubit, axis) pairs."""
    out = state
    for qubit, axis in paulis:
        matrix = PAULI_MATRICES.get(axis.upper())
        if matrix is None:
            raise InvalidArgumentError(f"Unknown Pauli axis {axis!r}; expected X, Y or Z")
        out = _apply_matrix(out, qubit, matrix)
    return out


def apply_anticontrolled_unitary(
    state: StateVector,
    control_qubit: int,
    unitary_on_register: RegisterUnitary,
) -> StateVector:
    """Apply a register unitary on the branch where ``control_qubit`` is |0>.

    The register seen by ``unitary_on_register`` is the remaining qubits in
    their original order.
    """
    _check_qubit(state, control_qubit)
    view = _pair_view(state.amplitudes, control_qubit).copy()
    branch = StateVector(state.num_qubits - 1, view[:, 0, :].reshape(-1))
    updated = unitary_on_register(branch)
    view[:, 0, :] = updated.amplitudes.reshape(view[:, 0, :].shape)
    return StateVector(state.num_qubits, view.reshape(-1))


# =============================================================================
# Measurements
# =============================================================================


def expectation_diagonal(state: StateVector, cost: DiagonalCostOperator) -> float:
    """Return sum_b p_b * diag_b."""
    _check_dimension(state, cost)
    return float(np.dot(state.probabilities(), cost.diag))


def variance_diagonal(state: StateVector, cost: DiagonalCostOperator) -> float:
    """Return sum_b p_b diag_b^2 - (sum_b p_b diag_b)^2, clipped at zero."""
    _check_dimension(state, cost)
    probs = state.probabilities()
    mean = float(np.dot(probs, cost.diag))
    second = float(np.dot(probs, cost.diag * cost.diag))
    return max(second - mean * mean, 0.0)


def apply_x_sum(state: StateVector) -> StateVector:
    """Apply the mixer generator B = sum_i X_i (not unitary)."""
    total = np.zeros_like(state.amplitudes)
    for qubit in range(state.num_qubits):
        total += _pair_view(state.amplitudes, qubit)[:, ::-1, :].reshape(-1)
    return StateVector(state.num_qubits, total)


def expectation_pauli_product(state: StateVector, paulis: Sequence[PauliFactor]) -> float:
    transformed = apply_pauli_product(state, paulis)
    return float(np.vdot(state.amplitudes, transformed.amplitudes).real)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """Return <a|b>."""
    if a.num_qubits != b.num_qubits:
        raise InvalidArgumentError(
            f"Cannot take overlap of {a.num_qubits}- and {b.num_qubits}-qubit states"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))
