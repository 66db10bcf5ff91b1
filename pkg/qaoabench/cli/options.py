"""Shared CLI option definitions."""

from pathlib import Path
from typing import Annotated, Optional

import typer

from qaoabench.cli._common import _default_cfg, bool_show_default, value_show_default

_exp = _default_cfg.experiment
_prec = _default_cfg.precision

NodesOpt = Annotated[
    Optional[int],
    typer.Option("--nodes", "-n", help="Graph nodes N (even)", show_default=value_show_default(_exp.nodes)),
]
DepthsOpt = Annotated[
    Optional[str],
    typer.Option(
        "--depths",
        "-p",
        help="Circuit depths: '5', '1,3,5' or a range '1..8'",
        show_default=value_show_default(",".join(str(p) for p in _exp.depths)),
    ),
]
InstancesOpt = Annotated[
    Optional[int],
    typer.Option("--instances", "-i", help="Number of random instances", show_default=value_show_default(_exp.instances)),
]
RunsOpt = Annotated[
    Optional[int],
    typer.Option("--runs", "-r", help="Optimization runs per instance", show_default=value_show_default(_exp.runs)),
]
MethodOpt = Annotated[
    Optional[list[str]],
    typer.Option(
        "--method",
        "-m",
        help="Method nm|fd|ag (repeatable)",
        show_default=value_show_default(",".join(_prec.methods)),
    ),
]
PresetOpt = Annotated[
    Optional[list[str]],
    typer.Option("--preset", help="Named precision preset, e.g. fd-0.01-0.1 (repeatable; replaces --method)"),
]
EpsilonOpt = Annotated[
    Optional[float],
    typer.Option("--epsilon", help="Objective precision", show_default=value_show_default(_prec.epsilon)),
]
DeltaOpt = Annotated[
    Optional[float],
    typer.Option("--delta", help="Finite-difference increment", show_default=value_show_default(_prec.delta)),
]
EpsilonAgOpt = Annotated[
    Optional[float],
    typer.Option(
        "--epsilon-ag",
        help="Analytical gradient component precision",
        show_default=value_show_default(_prec.epsilon_ag),
    ),
]
SeedOpt = Annotated[
    Optional[int],
    typer.Option("--seed", "-s", help="Master seed", show_default=value_show_default(_exp.seed)),
]
ExactOpt = Annotated[
    Optional[bool],
    typer.Option(
        "--exact/--noisy",
        help="Noiseless estimates at one repetition each",
        show_default=bool_show_default(_prec.exact, "exact", "noisy"),
    ),
]
OutOpt = Annotated[
    Optional[Path],
    typer.Option("--out", "-o", help="Output directory", show_default=value_show_default(_exp.out)),
]
WarmStartOpt = Annotated[
    Optional[bool],
    typer.Option(
        "--warm-start/--no-warm-start",
        help="Add a run per depth from the padded previous-depth optimum",
        show_default=bool_show_default(_exp.warm_start, "warm-start", "no-warm-start"),
    ),
]
WorkersOpt = Annotated[
    Optional[int],
    typer.Option("--workers", "-w", help="Parallel worker processes", show_default=value_show_default(_exp.workers)),
]
FullTraceOpt = Annotated[
    Optional[bool],
    typer.Option(
        "--full-trace/--compact-trace",
        help="Store every optimizer event in runs.jsonl",
        show_default=bool_show_default(_exp.full_trace, "full-trace", "compact-trace"),
    ),
]
ConfigOpt = Annotated[
    Optional[Path],
    typer.Option("--config", "-c", help="Config file path"),
]
ResultsArg = Annotated[
    Optional[Path],
    typer.Argument(help="Results directory (default: configured output directory)"),
]
