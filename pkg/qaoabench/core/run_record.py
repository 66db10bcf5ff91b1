"""Result records of optimization runs and per-instance summaries.

One RunRecord is written per line of runs.jsonl.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.qaoa import ParameterVector
from qaoabench.core.shot_model import PrecisionConfig
from qaoabench.core.trace import TraceEvent
from qaoabench.utils.json_utils import JsonSerializable


@dataclass
class RunRecord(JsonSerializable):
    """Outcome of one optimization run.

    ``final_params`` are the optimizer's raw angles (warm starts reuse them);
    ``canonical_params`` wraps them into [0, 2pi) x [0, pi) for reporting.
    ``final_ratio`` uses the exact objective of the final parameters;
    ``noisy_ratio`` divides the optimizer's own (noisy) best estimate by the
    same maximum and is not clamped to 1.
    """

    instance_id: int
    depth: int
    precision: PrecisionConfig
    run_index: int
    seed: int
    final_params: list[float]
    final_ratio: float
    best_estimate: float
    noisy_ratio: float
    total_repetitions: int
    ledger: dict[str, int]
    stop_reason: str
    evaluations: int
    iterations: int
    warm_start: bool = False
    # (cumulative repetitions, exact ratio of the current incumbent)
    trajectory: list[tuple[int, float]] = field(default_factory=list)
    events: list[TraceEvent] = field(default_factory=list)

    @property
    def method(self) -> str:
        return self.precision.label

    @property
    def canonical_params(self) -> list[float]:
        canonical = ParameterVector.from_flat(self.final_params).canonical()
        return [float(v) for v in canonical.to_flat()]

    @property
    def sort_key(self) -> tuple[int, str, int, int]:
        return (self.instance_id, self.method, self.depth, self.run_index)

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance_id": self.instance_id,
            "depth": self.depth,
            "method": self.method,
            "precision": self.precision.to_dict(),
            "run_index": self.run_index,
            "seed": self.seed,
            "warm_start": self.warm_start,
            "final_params": list(self.final_params),
            "canonical_params": self.canonical_params,
            "final_ratio": self.final_ratio,
            "best_estimate": self.best_estimate,
            "noisy_ratio": self.noisy_ratio,
            "total_repetitions": self.total_repetitions,
            "ledger": dict(self.ledger),
            "stop_reason": self.stop_reason,
            "evaluations": self.evaluations,
            "iterations": self.iterations,
            "trajectory": [[reps, ratio] for reps, ratio in self.trajectory],
            "events": [e.to_dict() for e in self.events],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunRecord":
        return cls(
            instance_id=int(data["instance_id"]),
            depth=int(data["depth"]),
            precision=PrecisionConfig.from_dict(data["precision"]),
            run_index=int(data["run_index"]),
            seed=int(data["seed"]),
            final_params=[float(v) for v in data["final_params"]],
            final_ratio=float(data["final_ratio"]),
            best_estimate=float(data["best_estimate"]),
            noisy_ratio=float(data["noisy_ratio"]),
            total_repetitions=int(data["total_repetitions"]),
            ledger={k: int(v) for k, v in data.get("ledger", {}).items()},
            stop_reason=data["stop_reason"],
            evaluations=int(data.get("evaluations", 0)),
            iterations=int(data.get("iterations", 0)),
            warm_start=bool(data.get("warm_start", False)),
            trajectory=[(int(r), float(v)) for r, v in data.get("trajectory", [])],
            events=[TraceEvent.from_dict(e) for e in data.get("events", [])],
        )


@dataclass
class InstanceSummary(JsonSerializable):
    """Best-run post-selection for one (instance, depth, method).

    ``best_ratio`` is the maximum final ratio over the runs and
    ``total_repetitions`` the summed cost of all of them.
    """

    instance_id: int
    depth: int
    precision: PrecisionConfig
    best_ratio: float
    total_repetitions: int
    best_run_index: int
    num_runs: int
    max_cut: int = 0

    @property
    def method(self) -> str:
        return self.precision.label

    @classmethod
    def from_runs(cls, records: list[RunRecord], max_cut: int = 0) -> "InstanceSummary":
        """Post-select the best of a group of runs sharing instance, depth and method.

        Ties go to the lowest run index.
        """
        if not records:
            raise InvalidArgumentError("Cannot summarize an empty group of runs")
        first = records[0]
        best: Optional[RunRecord] = None
        for record in sorted(records, key=lambda r: r.run_index):
            if best is None or record.final_ratio > best.final_ratio:
                best = record
        assert best is not None
        return cls(
            instance_id=first.instance_id,
            depth=first.depth,
            precision=first.precision,
            best_ratio=best.final_ratio,
            total_repetitions=sum(r.total_repetitions for r in records),
            best_run_index=best.run_index,
            num_runs=len(records),
            max_cut=max_cut,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance_id": self.instance_id,
            "depth": self.depth,
            "method": self.method,
            "precision": self.precision.to_dict(),
            "best_ratio": self.best_ratio,
            "total_repetitions": self.total_repetitions,
            "best_run_index": self.best_run_index,
            "num_runs": self.num_runs,
            "max_cut": self.max_cut,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "InstanceSummary":
        return cls(
            instance_id=int(data["instance_id"]),
            depth=int(data["depth"]),
            precision=PrecisionConfig.from_dict(data["precision"]),
            best_ratio=float(data["best_ratio"]),
            total_repetitions=int(data["total_repetitions"]),
            best_run_index=int(data["best_run_index"]),
            num_runs=int(data["num_runs"]),
            max_cut=int(data.get("max_cut", 0)),
        )
