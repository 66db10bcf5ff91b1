"""Optimizer traces: what was evaluated, at which cumulative cost, and why a run stopped."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, NamedTuple, Optional

import numpy as np

from qaoabench.core.errors import OptimizationError
from qaoabench.core.shot_model import CostLedger
from qaoabench.utils.constants import (
    EVENT_LINE_SEARCH_END,
    EVENT_LINE_SEARCH_START,
    EVENT_STOP_REASON,
    EVENT_VERTEX_UPDATE,
)


class StopReason(Enum):
    """Termination rules of the optimizers."""

    NM_PLATEAU = "nm-plateau"
    NM_MAX_UPDATES = "nm-max-updates"
    BFGS_GRADIENT_FLOOR = "bfgs-gradient-floor"
    BFGS_SMALL_IMPROVEMENT = "bfgs-small-improvement"
    BFGS_MAX_LINE_SEARCHES = "bfgs-max-line-searches"


@dataclass
class TraceEvent:
    """One trace entry."""

    evaluation_index: int
    point: tuple[float, ...]
    value: float
    cumulative_repetitions: int
    tag: str
    detail: Optional[str] = None

    def to_dict(self, include_point: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "evaluation_index": self.evaluation_index,
            "value": self.value,
            "cumulative_repetitions": self.cumulative_repetitions,
            "tag": self.tag,
        }
        if include_point:
            data["point"] = list(self.point)
        if self.detail is not None:
            data["detail"] = self.detail
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TraceEvent":
        return cls(
            evaluation_index=int(data["evaluation_index"]),
            point=tuple(float(v) for v in data.get("point", [])),
            value=float(data["value"]),
            cumulative_repetitions=int(data["cumulative_repetitions"]),
            tag=data["tag"],
            detail=data.get("detail"),
        )


@dataclass
class OptimizerTrace:
    """Ordered events of one optimizer run bound to its cost ledger."""

    ledger: CostLedger
    events: list[TraceEvent] = field(default_factory=list)
    evaluations: int = 0
    iterations: int = 0
    stop_reason: Optional[StopReason] = None

    def evaluate(self, fn: Callable[[np.ndarray], float], x: np.ndarray) -> float:
        """Call an estimator, count it and reject non-finite results."""
        value = float(fn(x))
        self.evaluations += 1
        if not math.isfinite(value):
            raise OptimizationError(f"Non-finite objective estimate {value} at {x.tolist()}")
        return value

    def record(self, tag: str, point: np.ndarray, value: float, detail: Optional[str] = None) -> None:
        self.events.append(
            TraceEvent(
                evaluation_index=self.evaluations,
                point=tuple(float(v) for v in point),
                value=float(value),
                cumulative_repetitions=self.ledger.total_repetitions,
                tag=tag,
                detail=detail,
            )
        )

    def vertex_update(self, point: np.ndarray, value: float) -> None:
        self.record(EVENT_VERTEX_UPDATE, point, value)

    def line_search_start(self, point: np.ndarray, value: float) -> None:
        self.record(EVENT_LINE_SEARCH_START, point, value)

    def line_search_end(self, point: np.ndarray, value: float, accepted: bool) -> None:
        self.record(EVENT_LINE_SEARCH_END, point, value, None if accepted else "rejected")

    def stop(self, reason: StopReason, point: np.ndarray, value: float) -> None:
        if self.stop_reason is not None:
            raise OptimizationError(f"Run already stopped ({self.stop_reason.value})")
        self.stop_reason = reason
        self.record(EVENT_STOP_REASON, point, value, reason.value)

    def incumbents(self) -> list[TraceEvent]:
        """Events at which the best estimate so far strictly improved."""
        best = -math.inf
        out = []
        for event in self.events:
            if event.value > best:
                best = event.value
                out.append(event)
        return out


class OptimizerResult(NamedTuple):
    best_point: np.ndarray
    best_estimate: float
    trace: OptimizerTrace
