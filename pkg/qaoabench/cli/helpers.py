"""CLI helper functions shared by the QaoaBench commands."""

import re
from pathlib import Path
from typing import NoReturn, Optional, TypeVar

import typer
from rich.console import Console
from rich.table import Table

from qaoabench.cli._common import method_markup
from qaoabench.config import ConfigError, ConfigLoader
from qaoabench.config.schema import PrecisionSettings, QaoaBenchConfig
from qaoabench.core.errors import QaoaBenchError
from qaoabench.core.shot_model import MethodTag, PrecisionConfig
from qaoabench.core.summary import MethodStatistics

T = TypeVar("T")

_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


def error_exit(console: Console, message: str, code: int = 1) -> NoReturn:
    """Print an error message and exit.

    Args:
        console: Rich console for output
        message: Error message to display
        code: Exit code (default: 1)

    Raises:
        typer.Exit: Always raises with the given code
    """
    console.print(f"[red]Error:[/red] {message}")
    raise typer.Exit(code)


def load_config(console: Console, config_path: Optional[Path]) -> QaoaBenchConfig:
    """Load configuration, turning config errors into a CLI exit."""
    try:
        return ConfigLoader.load(config_path)
    except ConfigError as e:
        error_exit(console, str(e))


def resolve_bool(cli_value: Optional[bool], config_value: bool) -> bool:
    """Resolve boolean value: CLI overrides config if explicitly set."""
    return config_value if cli_value is None else cli_value


def resolve_value(cli_value: Optional[T], config_value: T) -> T:
    """Resolve any value: CLI overrides config if explicitly set."""
    return config_value if cli_value is None else cli_value


def parse_depths(text: str) -> list[int]:
    """Parse '5', '1,3,5' or '1..8' into a list of depths.

    Raises:
        typer.BadParameter: On malformed input.
    """
    match = _RANGE.match(text)
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise typer.BadParameter(f"Empty depth range: {text}")
        return list(range(low, high + 1))
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"Invalid depths: {text}")


def build_precision_configs(settings: PrecisionSettings) -> list[PrecisionConfig]:
    """Method configurations of a run: the presets when given, else the methods.

    Raises:
        QaoaBenchError: On unknown methods or presets, or invalid precisions.
    """
    if settings.presets:
        return [PrecisionConfig.from_preset(name, exact=settings.exact) for name in settings.presets]
    configs = []
    for method in settings.methods:
        try:
            tag = MethodTag(method.lower())
        except ValueError:
            raise QaoaBenchError(f"Unknown method {method!r}; choose from nm, fd, ag")
        configs.append(
            PrecisionConfig(
                method=tag,
                epsilon=settings.epsilon,
                delta=settings.delta,
                epsilon_ag=settings.epsilon_ag,
                exact=settings.exact,
            )
        )
    return configs


def statistics_table(rows: list[MethodStatistics], title: str = "Summary") -> Table:
    """Rich table with one row per (method configuration, depth)."""
    table = Table(title=title)
    table.add_column("Method")
    table.add_column("ε", justify="right")
    table.add_column("δ", justify="right")
    table.add_column("ε″", justify="right")
    table.add_column("p", justify="right")
    table.add_column("Average", justify="right", style="green")
    table.add_column("Std. dev.", justify="right")
    table.add_column("Median", justify="right")
    table.add_column("Total cost", justify="right", style="yellow")
    table.add_column("Instances", justify="right")

    for row in rows:
        prec = row.precision
        table.add_row(
            method_markup(prec),
            f"{prec.epsilon:g}",
            f"{prec.delta:g}" if prec.method is MethodTag.FD else "-",
            f"{prec.epsilon_ag:g}" if prec.method is MethodTag.AG else "-",
            str(row.depth),
            f"{row.avg:.4f}",
            f"{row.stddev:.4f}",
            f"{row.median:.4f}",
            f"{row.total_cost:.3g}",
            str(row.num_instances),
        )
    return table
