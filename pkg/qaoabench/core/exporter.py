"""Persistence of experiment results.

Layout of an output directory::

    instances/instance_0000.json
    runs.jsonl
    summary.csv
    curves/instance_0000_<method>_p<depth>.csv
"""

from __future__ import annotations

import csv
import io
import logging
from collections import defaultdict
from pathlib import Path
from typing import Iterable

from qaoabench.core.curves import emit_cost_curves
from qaoabench.core.experiment import ExperimentResult
from qaoabench.core.maxcut import MaxCutInstance, save_instance
from qaoabench.core.run_record import InstanceSummary, RunRecord
from qaoabench.core.summary import SUMMARY_COLUMNS, MethodStatistics, summarize
from qaoabench.utils.constants import (
    CURVES_DIR,
    INSTANCE_FILE_PATTERN,
    INSTANCES_DIR,
    RUNS_FILE,
    SUMMARY_FILE,
)

logger = logging.getLogger(__name__)


class ResultExporter:
    """Writes instances, run records, summaries and curves to one directory."""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)

    @property
    def runs_path(self) -> Path:
        return self.output_dir / RUNS_FILE

    @property
    def summary_path(self) -> Path:
        return self.output_dir / SUMMARY_FILE

    def instance_path(self, instance_id: int) -> Path:
        return self.output_dir / INSTANCES_DIR / INSTANCE_FILE_PATTERN.format(instance_id=instance_id)

    def write_instances(self, instances: Iterable[MaxCutInstance]) -> list[Path]:
        return [save_instance(inst, self.instance_path(inst.instance_id)) for inst in instances]

    def write_runs(self, records: Iterable[RunRecord]) -> Path:
        """One JSON object per line, keys sorted, in the given order."""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        with self.runs_path.open("w", encoding="utf-8", newline="\n") as f:
            for record in records:
                f.write(record.to_json_line() + "\n")
        return self.runs_path

    def write_summary(self, rows: list[MethodStatistics]) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.summary_path.write_text(summary_to_csv(rows), encoding="utf-8")
        return self.summary_path

    def export(self, result: ExperimentResult, with_curves: bool = True) -> dict[str, Path]:
        """Write every artifact of an experiment.

        Returns:
            Mapping of artifact name to path.
        """
        self.write_instances(result.instances)
        paths = {
            "instances": self.output_dir / INSTANCES_DIR,
            "runs": self.write_runs(result.records),
            "summary": self.write_summary(summarize(result.summaries)),
        }
        if with_curves:
            emit_cost_curves(result.records, self.output_dir)
            paths["curves"] = self.output_dir / CURVES_DIR
        logger.info(f"Results written to {self.output_dir}")
        return paths


def summary_to_csv(rows: list[MethodStatistics]) -> str:
    output = io.StringIO()
    writer = csv.DictWriter(output, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.as_row().items()})
    return output.getvalue()


def load_runs(path: Path) -> list[RunRecord]:
    """Read a runs.jsonl file; blank lines are skipped."""
    records = []
    with Path(path).open(encoding="utf-8") as f:
        for line in f:
            if line.strip():
                records.append(RunRecord.from_json(line))
    return records


def summaries_from_runs(records: Iterable[RunRecord]) -> list[InstanceSummary]:
    """Rebuild the best-run summaries from stored run records."""
    groups: dict[tuple[int, str, int], list[RunRecord]] = defaultdict(list)
    for record in records:
        groups[(record.instance_id, record.method, record.depth)].append(record)
    return [InstanceSummary.from_runs(group) for _, group in sorted(groups.items())]
