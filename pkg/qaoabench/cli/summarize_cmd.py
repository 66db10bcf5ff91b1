"""Summarize command for QaoaBench CLI."""

from pathlib import Path

import typer

from qaoabench.cli._common import console
from qaoabench.cli.helpers import error_exit, load_config, statistics_table
from qaoabench.cli.options import ConfigOpt, ResultsArg
from qaoabench.core.errors import QaoaBenchError
from qaoabench.core.exporter import ResultExporter, load_runs, summaries_from_runs
from qaoabench.core.summary import summarize
from qaoabench.utils.constants import RUNS_FILE


def resolve_results_dir(results: Path | None, config: Path | None) -> Path:
    """Results directory from the argument or the configured output directory."""
    if results is not None:
        return results
    return Path(load_config(console, config).experiment.out)


def register_summarize(app: typer.Typer) -> None:
    """Register the summarize command with the Typer app."""

    @app.command("summarize")
    def summarize_results(
        results: ResultsArg = None,
        config: ConfigOpt = None,
        write: bool = typer.Option(True, "--write/--no-write", help="Rewrite summary.csv"),
    ):
        """
        Summarize the best runs of a results directory.

        Reads runs.jsonl, post-selects the best run of every instance and
        prints average, standard deviation, median and total cost per method.
        """
        results_dir = resolve_results_dir(results, config)
        runs_path = results_dir / RUNS_FILE
        if not runs_path.exists():
            error_exit(console, f"No {RUNS_FILE} in {results_dir}")

        try:
            records = load_runs(runs_path)
            rows = summarize(summaries_from_runs(records))
        except (QaoaBenchError, ValueError, KeyError) as e:
            error_exit(console, f"Cannot read {runs_path}: {e}")

        if not rows:
            console.print("[yellow]No runs recorded.[/yellow]")
            return

        console.print(statistics_table(rows, title=f"Summary ({len(records)} runs)"))
        if write:
            path = ResultExporter(results_dir).write_summary(rows)
            console.print(f"[green]Summary:[/green] {path}")
