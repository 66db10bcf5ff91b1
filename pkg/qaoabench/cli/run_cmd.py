"""Run command for QaoaBench CLI."""

from pathlib import Path

import typer

from qaoabench.cli._common import console
from qaoabench.cli.helpers import (
    build_precision_configs,
    error_exit,
    load_config,
    parse_depths,
    resolve_bool,
    resolve_value,
    statistics_table,
)
from qaoabench.cli.options import (
    ConfigOpt,
    DeltaOpt,
    DepthsOpt,
    EpsilonAgOpt,
    EpsilonOpt,
    ExactOpt,
    FullTraceOpt,
    InstancesOpt,
    MethodOpt,
    NodesOpt,
    OutOpt,
    PresetOpt,
    RunsOpt,
    SeedOpt,
    WarmStartOpt,
    WorkersOpt,
)
from qaoabench.config import ConfigLoader
from qaoabench.core.errors import QaoaBenchError
from qaoabench.core.experiment import ExperimentConfig, run_experiment
from qaoabench.core.exporter import ResultExporter
from qaoabench.core.summary import summarize
from qaoabench.utils.constants import LOG_FILE
from qaoabench.utils.logging import setup_logging


def register_run(app: typer.Typer) -> None:
    """Register the run command with the Typer app."""

    @app.command()
    def run(
        nodes: NodesOpt = None,
        depths: DepthsOpt = None,
        instances: InstancesOpt = None,
        runs: RunsOpt = None,
        method: MethodOpt = None,
        preset: PresetOpt = None,
        epsilon: EpsilonOpt = None,
        delta: DeltaOpt = None,
        epsilon_ag: EpsilonAgOpt = None,
        seed: SeedOpt = None,
        exact: ExactOpt = None,
        out: OutOpt = None,
        warm_start: WarmStartOpt = None,
        workers: WorkersOpt = None,
        full_trace: FullTraceOpt = None,
        config: ConfigOpt = None,
    ):
        """
        Run an optimization experiment.

        Generates the instances, optimizes every (instance, depth, method) from
        the shared random starts and writes runs.jsonl, summary.csv, the
        instance files and the cost curves to the output directory.

        CLI arguments override config file values.
        """
        cfg = load_config(console, config)

        exp = cfg.experiment
        exp.nodes = resolve_value(nodes, exp.nodes)
        exp.depths = parse_depths(depths) if depths is not None else exp.depths
        exp.instances = resolve_value(instances, exp.instances)
        exp.runs = resolve_value(runs, exp.runs)
        exp.seed = resolve_value(seed, exp.seed)
        exp.out = resolve_value(out, exp.out)
        exp.warm_start = resolve_bool(warm_start, exp.warm_start)
        exp.workers = resolve_value(workers, exp.workers)
        exp.full_trace = resolve_bool(full_trace, exp.full_trace)

        prec = cfg.precision
        if method:
            prec.methods = [m.lower() for m in method]
            prec.presets = []
        if preset:
            prec.presets = list(preset)
        prec.epsilon = resolve_value(epsilon, prec.epsilon)
        prec.delta = resolve_value(delta, prec.delta)
        prec.epsilon_ag = resolve_value(epsilon_ag, prec.epsilon_ag)
        prec.exact = resolve_bool(exact, prec.exact)

        errors = ConfigLoader.validate(cfg)
        if errors:
            for message in errors:
                console.print(f"[red]•[/red] {message}")
            error_exit(console, "Invalid settings")

        try:
            experiment = ExperimentConfig.from_settings(cfg, build_precision_configs(prec))
        except QaoaBenchError as e:
            error_exit(console, str(e))

        out_dir = Path(experiment.output_dir)
        if cfg.logging.log_to_file:
            setup_logging(
                level=cfg.logging.log_level,
                log_file=out_dir / LOG_FILE,
                use_colors=cfg.logging.color_output,
            )

        console.print(
            f"[blue]Experiment:[/blue] N={experiment.num_nodes}, "
            f"p={','.join(str(p) for p in experiment.depths)}, "
            f"{experiment.num_instances} instance(s) × {experiment.runs_per_instance} run(s)"
        )
        console.print(f"[dim]Methods: {', '.join(m.label for m in experiment.methods)}[/dim]")
        if prec.exact:
            console.print("[yellow]Exact mode: noise disabled[/yellow]")
        console.print()

        with console.status("[bold blue]Optimizing..."):
            result = run_experiment(experiment)

        paths = ResultExporter(out_dir).export(result)

        console.print(statistics_table(summarize(result.summaries)))
        console.print()
        for instance_id, message in result.failures:
            console.print(f"[yellow]Instance {instance_id} failed:[/yellow] {message}")
        console.print(f"[green]Runs:[/green] {paths['runs']}")
        console.print(f"[green]Summary:[/green] {paths['summary']}")

        if result.failures and not result.records:
            raise typer.Exit(1)
