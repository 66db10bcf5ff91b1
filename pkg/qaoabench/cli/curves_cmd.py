"""Curves command for QaoaBench CLI."""

import typer

from qaoabench.cli._common import console
from qaoabench.cli.helpers import error_exit
from qaoabench.cli.options import ConfigOpt, ResultsArg
from qaoabench.cli.summarize_cmd import resolve_results_dir
from qaoabench.core.curves import emit_cost_curves
from qaoabench.core.errors import QaoaBenchError
from qaoabench.core.exporter import load_runs
from qaoabench.utils.constants import CURVES_DIR, RUNS_FILE


def register_curves(app: typer.Typer) -> None:
    """Register the curves command with the Typer app."""

    @app.command()
    def curves(
        results: ResultsArg = None,
        config: ConfigOpt = None,
    ):
        """
        Write best-run cost curves from a results directory.

        One CSV per (instance, method, depth) with the best ratio reached
        by any run at each cumulative repetition cost.
        """
        results_dir = resolve_results_dir(results, config)
        runs_path = results_dir / RUNS_FILE
        if not runs_path.exists():
            error_exit(console, f"No {RUNS_FILE} in {results_dir}")

        try:
            records = load_runs(runs_path)
        except (QaoaBenchError, ValueError, KeyError) as e:
            error_exit(console, f"Cannot read {runs_path}: {e}")

        written = emit_cost_curves(records, results_dir)
        console.print(f"[green]Wrote {len(written)} curve file(s) to[/green] {results_dir / CURVES_DIR}")
