"""MAX-CUT instances on random 3-regular graphs.

Node i corresponds to qubit i. A basis index b encodes the assignment
with bit i of b set when z_i = -1 and clear when z_i = +1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from qaoabench.core.errors import CapacityError, InvalidArgumentError
from qaoabench.utils.constants import (
    BRUTE_FORCE_CHUNK,
    MAX_BRUTE_FORCE_NODES,
    MAX_PAIRING_ATTEMPTS,
    REGULAR_DEGREE,
)
from qaoabench.utils.json_utils import JsonSerializable

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Assignment:
    """A spin assignment z_i in {-1, +1}, one entry per node."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(v not in (-1, 1) for v in self.values):
            raise InvalidArgumentError(f"Assignment entries must be -1 or +1: {self.values}")

    def __len__(self) -> int:
        return len(self.values)

    def flipped(self) -> "Assignment":
        """Return the globally sign-flipped assignment -z."""
        return Assignment(tuple(-v for v in self.values))

    def to_index(self) -> int:
        """Basis index encoding this assignment (bit i set for z_i = -1)."""
        return sum(1 << i for i, v in enumerate(self.values) if v == -1)

    @classmethod
    def from_index(cls, index: int, num_nodes: int) -> "Assignment":
        return cls(tuple(-1 if (index >> i) & 1 else 1 for i in range(num_nodes)))


@dataclass(frozen=True)
class MaxCutInstance(JsonSerializable):
    """An unweighted MAX-CUT instance on a 3-regular graph.

    Edges are stored normalized (u < v) and sorted, so equal graphs compare
    and hash equal and instance files are reproducible byte for byte.
    """

    num_nodes: int
    edges: tuple[Edge, ...]
    instance_id: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        normalized = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", normalized)
        self._check_invariants()

    def _check_invariants(self) -> None:
        n = self.num_nodes
        if n < 4 or n % 2:
            raise InvalidArgumentError(f"num_nodes must be even and >= 4, got {n}")
        if len(set(self.edges)) != len(self.edges):
            raise InvalidArgumentError("Duplicate edges are not allowed")
        degree = [0] * n
        for u, v in self.edges:
            if u == v:
                raise InvalidArgumentError(f"Self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidArgumentError(f"Edge ({u}, {v}) out of range for {n} nodes")
            degree[u] += 1
            degree[v] += 1
        if any(d != REGULAR_DEGREE for d in degree):
            raise InvalidArgumentError(f"Graph is not {REGULAR_DEGREE}-regular: degrees {degree}")

    @property
    def num_clauses(self) -> int:
        """Number of clauses k_C (one per edge)."""
        return len(self.edges)

    def degrees(self) -> list[int]:
        degree = [0] * self.num_nodes
        for u, v in self.edges:
            degree[u] += 1
            degree[v] += 1
        return degree

    def to_dict(self) -> dict[str, Any]:
        return {
            "num_nodes": self.num_nodes,
            "edges": [[u, v] for u, v in self.edges],
            "instance_id": self.instance_id,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MaxCutInstance":
        return cls(
            num_nodes=int(data["num_nodes"]),
            edges=tuple((int(u), int(v)) for u, v in data["edges"]),
            instance_id=int(data.get("instance_id", 0)),
            seed=int(data.get("seed", 0)),
        )


def generate_random_3regular(num_nodes: int, seed: int, instance_id: int = 0) -> MaxCutInstance:
    """Sample a simple 3-regular graph with the configuration (pairing) model.

    Three stubs are created per node and paired by a uniform random perfect
    matching. The whole matching is rejected and redrawn when it contains a
    self-loop or a repeated edge.

    Args:
        num_nodes: Even number of nodes, at least 4.
        seed: Seed of the sampling stream.
        instance_id: Label stored on the instance.

    Returns:
        A MaxCutInstance, deterministic for fixed (num_nodes, seed).

    Raises:
        InvalidArgumentError: If num_nodes is odd or smaller than 4.
    """
    if num_nodes < 4 or num_nodes % 2:
        raise InvalidArgumentError(f"num_nodes must be even and >= 4, got {num_nodes}")

    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(num_nodes), REGULAR_DEGREE)

    for attempt in range(1, MAX_PAIRING_ATTEMPTS + 1):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        edges = {(int(min(u, v)), int(max(u, v))) for u, v in pairs}
        if len(edges) != len(pairs):
            continue
        logger.debug(f"Pairing accepted after {attempt} attempt(s) (N={num_nodes}, seed={seed})")
        return MaxCutInstance(
            num_nodes=num_nodes,
            edges=tuple(sorted(edges)),
            instance_id=instance_id,
            seed=seed,
        )

    raise CapacityError(
        f"No simple pairing found in {MAX_PAIRING_ATTEMPTS} attempts (N={num_nodes})"
    )


def cut_values(num_nodes: int, edges: Sequence[Edge], indices: np.ndarray) -> np.ndarray:
    """Satisfied-clause counts for a batch of basis indices."""
    indices = np.asarray(indices, dtype=np.int64)
    values = np.zeros(indices.shape, dtype=np.int64)
    for u, v in edges:
        values += ((indices >> u) ^ (indices >> v)) & 1
    return values


def classical_objective(instance: MaxCutInstance, z: Assignment | Sequence[int]) -> int:
    """Count the satisfied clauses (1 - z_u z_v)/2 of an assignment.

    Raises:
        InvalidArgumentError: If the assignment length differs from num_nodes.
    """
    values = z.values if isinstance(z, Assignment) else tuple(z)
    if len(values) != instance.num_nodes:
        raise InvalidArgumentError(
            f"Assignment has {len(values)} entries, instance has {instance.num_nodes} nodes"
        )
    if any(v not in (-1, 1) for v in values):
        raise InvalidArgumentError(f"Assignment entries must be -1 or +1: {values}")
    return sum((1 - values[u] * values[v]) // 2 for u, v in instance.edges)


def brute_force_maximum(instance: MaxCutInstance) -> tuple[int, Assignment]:
    """Exhaustive MAX-CUT optimum over all 2^N assignments.

    Ties are broken toward the lowest basis index.

    Raises:
        CapacityError: If N exceeds the enumeration guard.
    """
    n = instance.num_nodes
    if n > MAX_BRUTE_FORCE_NODES:
        raise CapacityError(
            f"Brute force limited to {MAX_BRUTE_FORCE_NODES} nodes, instance has {n}"
        )

    best_value = -1
    best_index = 0
    total = 1 << n
    for start in range(0, total, BRUTE_FORCE_CHUNK):
        block = np.arange(start, min(start + BRUTE_FORCE_CHUNK, total), dtype=np.int64)
        values = cut_values(n, instance.edges, block)
        pos = int(np.argmax(values))
        if values[pos] > best_value:
            best_value = int(values[pos])
            best_index = start + pos

    return best_value, Assignment.from_index(best_index, n)


def save_instance(instance: MaxCutInstance, path: Path) -> Path:
    """Write an instance file (pretty JSON, trailing newline)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(instance.to_json() + "\n", encoding="utf-8")
    return path


def load_instance(path: Path) -> MaxCutInstance:
    return MaxCutInstance.from_json(path.read_text(encoding="utf-8"))
