"""Best-run cost curves: best current ratio over the runs of a group versus repetition cost."""

from __future__ import annotations

import csv
import logging
from collections import defaultdict
from pathlib import Path
from typing import Iterable

from qaoabench.core.run_record import RunRecord
from qaoabench.utils.constants import CURVES_DIR

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["cumulative_repetitions", "best_ratio"]


def build_cost_curve(records: Iterable[RunRecord]) -> list[tuple[int, float]]:
    """Merge the runs of one (instance, method, depth) into a step curve.

    Every run contributes the exact ratio of its incumbent at its own
    cumulative cost c. The curve holds the best of those values over the
    runs that have started by c, and keeps only the costs at which that
    value changes. A noisy incumbent can be worse than the one it replaced,
    so the curve may fall. It ends at the best final ratio of the group.
    """
    trajectories = [record.trajectory for record in records if record.trajectory]
    costs = sorted({reps for trajectory in trajectories for reps, _ in trajectory})
    positions = [-1] * len(trajectories)

    curve: list[tuple[int, float]] = []
    for cost in costs:
        current = []
        for i, trajectory in enumerate(trajectories):
            while positions[i] + 1 < len(trajectory) and trajectory[positions[i] + 1][0] <= cost:
                positions[i] += 1
            if positions[i] >= 0:
                current.append(trajectory[positions[i]][1])
        value = max(current)
        if not curve or value != curve[-1][1]:
            curve.append((cost, value))
    return curve


def curve_filename(instance_id: int, method: str, depth: int) -> str:
    return f"instance_{instance_id:04d}_{method}_p{depth}.csv"


def write_curve(curve: list[tuple[int, float]], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CURVE_COLUMNS)
        for reps, ratio in curve:
            writer.writerow([reps, repr(ratio)])
    return path


def emit_cost_curves(records: Iterable[RunRecord], output_dir: Path) -> list[Path]:
    """Write one curve CSV per (instance, method, depth) under ``output_dir/curves``.

    Returns:
        Written paths in sorted order.
    """
    groups: dict[tuple[int, str, int], list[RunRecord]] = defaultdict(list)
    for record in records:
        groups[(record.instance_id, record.method, record.depth)].append(record)

    written = []
    for (instance_id, method, depth), group in sorted(groups.items()):
        path = Path(output_dir) / CURVES_DIR / curve_filename(instance_id, method, depth)
        written.append(write_curve(build_cost_curve(group), path))
    logger.info(f"Wrote {len(written)} cost curve(s) to {Path(output_dir) / CURVES_DIR}")
    return written
