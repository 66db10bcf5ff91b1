"""Main CLI application for QaoaBench.

This module registers all CLI commands; each command lives in its own module.
"""

import typer

from qaoabench.utils.logging import setup_logging

from qaoabench.cli.gen_cmd import register_gen
from qaoabench.cli.run_cmd import register_run
from qaoabench.cli.summarize_cmd import register_summarize
from qaoabench.cli.curves_cmd import register_curves
from qaoabench.cli.version_cmd import register_version
from qaoabench.cli.config_cmd import create_config_app


app = typer.Typer(
    name="qaoabench",
    help="QaoaBench: QAOA MAX-CUT optimization under finite measurement budgets.",
    add_completion=False,
    no_args_is_help=True,
)


@app.callback()
def main_callback(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose output"),
):
    """QaoaBench: QAOA MAX-CUT optimization under finite measurement budgets."""
    log_level = "DEBUG" if verbose else "INFO"
    setup_logging(level=log_level)


register_gen(app)
register_run(app)
register_summarize(app)
register_curves(app)
register_version(app)

app.add_typer(create_config_app(), name="config")


if __name__ == "__main__":
    app()
