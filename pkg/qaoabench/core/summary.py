"""Per-method statistics over instances (average, spread, median, cost)."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from qaoabench.core.run_record import InstanceSummary
from qaoabench.core.shot_model import PrecisionConfig

SUMMARY_COLUMNS = [
    "method",
    "epsilon",
    "delta",
    "epsilon_ag",
    "depth",
    "avg",
    "stddev",
    "median",
    "total_cost",
    "mean_instance_cost",
    "num_instances",
]


@dataclass
class MethodStatistics:
    """One summary row: a method configuration at one depth."""

    precision: PrecisionConfig
    depth: int
    avg: float
    stddev: float
    median: float
    total_cost: int
    mean_instance_cost: float
    num_instances: int

    def as_row(self) -> dict[str, Any]:
        return {
            "method": self.precision.method.value,
            "epsilon": self.precision.epsilon,
            "delta": self.precision.delta,
            "epsilon_ag": self.precision.epsilon_ag,
            "depth": self.depth,
            "avg": self.avg,
            "stddev": self.stddev,
            "median": self.median,
            "total_cost": self.total_cost,
            "mean_instance_cost": self.mean_instance_cost,
            "num_instances": self.num_instances,
        }


def summarize(summaries: Iterable[InstanceSummary]) -> list[MethodStatistics]:
    """Aggregate best-run ratios per (method configuration, depth).

    The standard deviation is the population one (divisor N_i). The total
    cost is the sum of every instance's summed run cost.

    Returns:
        Rows sorted by method label, then depth.
    """
    groups: dict[tuple[str, int], list[InstanceSummary]] = defaultdict(list)
    for s in summaries:
        groups[(s.method, s.depth)].append(s)

    rows = []
    for (_, depth), group in sorted(groups.items()):
        ratios = np.array([s.best_ratio for s in group])
        costs = np.array([s.total_repetitions for s in group], dtype=np.int64)
        rows.append(
            MethodStatistics(
                precision=group[0].precision,
                depth=depth,
                avg=float(np.mean(ratios)),
                stddev=float(np.std(ratios)),
                median=float(np.median(ratios)),
                total_cost=int(costs.sum()),
                mean_instance_cost=float(costs.mean()),
                num_instances=len(group),
            )
        )
    return rows
