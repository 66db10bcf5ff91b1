"""Unit tests for qaoabench.core.curves."""

import csv

from qaoabench.core.curves import (
    CURVE_COLUMNS,
    build_cost_curve,
    curve_filename,
    emit_cost_curves,
)
from qaoabench.core.run_record import RunRecord
from qaoabench.core.shot_model import MethodTag, PrecisionConfig


def make_record(trajectory, run_index=0, instance_id=0, depth=1):
    return RunRecord(
        instance_id=instance_id,
        depth=depth,
        precision=PrecisionConfig(MethodTag.NM, 0.1),
        run_index=run_index,
        seed=0,
        final_params=[0.0, 0.0],
        final_ratio=trajectory[-1][1],
        best_estimate=0.0,
        noisy_ratio=0.0,
        total_repetitions=trajectory[-1][0],
        ledger={},
        stop_reason="nm-plateau",
        evaluations=0,
        iterations=0,
        trajectory=trajectory,
    )


class TestBuildCostCurve:
    """Tests for merging run trajectories."""

    def test_single_run_is_its_trajectory(self):
        curve = build_cost_curve([make_record([(10, 0.5), (20, 0.7), (30, 0.7)])])
        assert curve == [(10, 0.5), (20, 0.7)]

    def test_merges_runs_by_cost(self):
        a = make_record([(10, 0.5), (50, 0.9)])
        b = make_record([(20, 0.6), (40, 0.8), (60, 0.85)], run_index=1)

        curve = build_cost_curve([a, b])

        assert curve == [(10, 0.5), (20, 0.6), (40, 0.8), (50, 0.9)]

    def test_worse_incumbent_lowers_the_curve(self):
        curve = build_cost_curve([make_record([(10, 0.4), (12, 0.2)])])
        assert curve == [(10, 0.4), (12, 0.2)]

    def test_curve_takes_best_current_run(self):
        a = make_record([(5, 0.3), (15, 0.95)])
        b = make_record([(10, 0.4), (12, 0.2), (30, 0.99)], run_index=1)

        curve = build_cost_curve([a, b])

        assert curve == [(5, 0.3), (10, 0.4), (12, 0.3), (15, 0.95), (30, 0.99)]

    def test_curve_ends_at_best_final_ratio(self):
        a = make_record([(10, 0.9), (40, 0.7)])
        b = make_record([(20, 0.6), (30, 0.8)], run_index=1)

        curve = build_cost_curve([a, b])

        assert curve == [(10, 0.9), (40, 0.8)]
        assert curve[-1][1] == max(r.final_ratio for r in (a, b))

    def test_same_cost_keeps_best(self):
        a = make_record([(10, 0.5)])
        b = make_record([(10, 0.6)], run_index=1)
        assert build_cost_curve([a, b]) == [(10, 0.6)]

    def test_empty(self):
        assert build_cost_curve([]) == []


class TestEmitCostCurves:
    def test_filename(self):
        assert curve_filename(3, "nm_e0.1", 5) == "instance_0003_nm_e0.1_p5.csv"

    def test_one_file_per_group(self, tmp_path):
        records = [
            make_record([(10, 0.5)]),
            make_record([(20, 0.7)], run_index=1),
            make_record([(5, 0.4)], depth=2),
        ]

        paths = emit_cost_curves(records, tmp_path)

        assert [p.name for p in paths] == [
            "instance_0000_nm_e0.1_p1.csv",
            "instance_0000_nm_e0.1_p2.csv",
        ]
        with paths[0].open(encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == CURVE_COLUMNS
        assert rows[1:] == [["10", "0.5"], ["20", "0.7"]]
