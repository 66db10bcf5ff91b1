"""Tests for the summarize and curves CLI commands."""

from pathlib import Path

import pytest
from typer.testing import CliRunner

from qaoabench.cli.main import app
from qaoabench.utils.constants import CURVES_DIR, RUNS_FILE, SUMMARY_FILE


runner = CliRunner()


@pytest.fixture
def results_dir() -> Path:
    """A finished exact experiment in ./out."""
    result = runner.invoke(
        app,
        ["run", "-n", "4", "-p", "1", "-i", "1", "-r", "2", "-m", "nm", "-m", "fd", "--exact", "-o", "out"],
    )
    assert result.exit_code == 0, result.stdout
    return Path("out")


class TestSummarizeCommand:
    """Tests for 'qaoabench summarize' command."""

    def test_rewrites_identical_summary(self, results_dir):
        original = (results_dir / SUMMARY_FILE).read_bytes()
        (results_dir / SUMMARY_FILE).unlink()

        result = runner.invoke(app, ["summarize", str(results_dir)])

        assert result.exit_code == 0
        assert "Summary (4 runs)" in result.stdout
        assert (results_dir / SUMMARY_FILE).read_bytes() == original

    def test_no_write(self, results_dir):
        (results_dir / SUMMARY_FILE).unlink()

        result = runner.invoke(app, ["summarize", str(results_dir), "--no-write"])

        assert result.exit_code == 0
        assert not (results_dir / SUMMARY_FILE).exists()

    def test_uses_configured_output_dir(self, results_dir):
        Path("qaoabench.yaml").write_text("out: out\n", encoding="utf-8")

        result = runner.invoke(app, ["summarize"])

        assert result.exit_code == 0
        assert "NM" in result.stdout

    def test_missing_runs(self, tmp_path):
        result = runner.invoke(app, ["summarize", str(tmp_path / "empty")])

        assert result.exit_code == 1
        assert RUNS_FILE in result.stdout

    def test_corrupt_runs(self, tmp_path):
        (tmp_path / RUNS_FILE).write_text('{"instance_id": 0}\n', encoding="utf-8")

        result = runner.invoke(app, ["summarize", str(tmp_path)])

        assert result.exit_code == 1
        assert "Cannot read" in result.stdout

    def test_empty_runs(self, tmp_path):
        (tmp_path / RUNS_FILE).write_text("", encoding="utf-8")

        result = runner.invoke(app, ["summarize", str(tmp_path)])

        assert result.exit_code == 0
        assert "No runs recorded" in result.stdout


class TestCurvesCommand:
    """Tests for 'qaoabench curves' command."""

    def test_rebuilds_curves(self, results_dir):
        curves = results_dir / CURVES_DIR
        before = {p.name: p.read_bytes() for p in curves.iterdir()}
        for p in curves.iterdir():
            p.unlink()

        result = runner.invoke(app, ["curves", str(results_dir)])

        assert result.exit_code == 0
        assert {p.name: p.read_bytes() for p in curves.iterdir()} == before
        assert len(before) == 2

    def test_missing_runs(self, tmp_path):
        result = runner.invoke(app, ["curves", str(tmp_path)])

        assert result.exit_code == 1
