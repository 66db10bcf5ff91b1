"""Version command for QaoaBench CLI."""

import numpy as np
import typer

from qaoabench import __version__
from qaoabench.cli._common import console
from qaoabench.utils.constants import (
    MAX_BRUTE_FORCE_NODES,
    MAX_EMULATOR_QUBITS,
    MAX_EMULATOR_QUBITS_WITH_ANCILLA,
)


def register_version(app: typer.Typer) -> None:
    """Register the version command with the Typer app."""

    @app.command()
    def version():
        """Show QaoaBench version and emulator limits."""
        console.print(f"QaoaBench v{__version__}")
        console.print(f"[dim]numpy {np.__version__}[/dim]")
        console.print(
            f"[dim]Emulator: up to {MAX_EMULATOR_QUBITS} qubits "
            f"({MAX_EMULATOR_QUBITS_WITH_ANCILLA} with ancilla), "
            f"brute force up to {MAX_BRUTE_FORCE_NODES} nodes[/dim]"
        )
