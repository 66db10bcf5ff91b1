"""Gen command for QaoaBench CLI."""

import typer
from rich.table import Table

from qaoabench.cli._common import console
from qaoabench.cli.helpers import error_exit, load_config, resolve_value
from qaoabench.cli.options import ConfigOpt, InstancesOpt, NodesOpt, OutOpt, SeedOpt
from qaoabench.core.errors import QaoaBenchError
from qaoabench.core.experiment import instance_seed
from qaoabench.core.exporter import ResultExporter
from qaoabench.core.maxcut import brute_force_maximum, generate_random_3regular
from qaoabench.utils.constants import MAX_BRUTE_FORCE_NODES


def register_gen(app: typer.Typer) -> None:
    """Register the gen command with the Typer app."""

    @app.command()
    def gen(
        nodes: NodesOpt = None,
        instances: InstancesOpt = None,
        seed: SeedOpt = None,
        out: OutOpt = None,
        config: ConfigOpt = None,
        max_cut: bool = typer.Option(
            True, "--max-cut/--no-max-cut", help="Brute-force and show each optimum"
        ),
    ):
        """
        Generate random 3-regular MAX-CUT instances.

        Writes instances/instance_NNNN.json under the output directory. The
        instances are the ones `run` uses for the same seed and size.
        """
        cfg = load_config(console, config)
        use_nodes = resolve_value(nodes, cfg.experiment.nodes)
        use_instances = resolve_value(instances, cfg.experiment.instances)
        use_seed = resolve_value(seed, cfg.experiment.seed)
        exporter = ResultExporter(resolve_value(out, cfg.experiment.out))

        if use_instances < 1:
            error_exit(console, f"instances must be >= 1, got {use_instances}")

        try:
            generated = [
                generate_random_3regular(use_nodes, instance_seed(use_seed, i), i)
                for i in range(use_instances)
            ]
        except QaoaBenchError as e:
            error_exit(console, str(e))

        paths = exporter.write_instances(generated)

        table = Table(title=f"Instances (N={use_nodes})")
        table.add_column("ID", style="cyan", justify="right")
        table.add_column("Edges", justify="right")
        table.add_column("Max cut", justify="right", style="green")
        table.add_column("File", style="dim")
        show_max = max_cut and use_nodes <= MAX_BRUTE_FORCE_NODES
        for inst, path in zip(generated, paths):
            best = str(brute_force_maximum(inst)[0]) if show_max else "-"
            table.add_row(str(inst.instance_id), str(inst.num_clauses), best, path.name)

        console.print(table)
        console.print(f"[green]Wrote {len(paths)} instance file(s) to[/green] {paths[0].parent}")
