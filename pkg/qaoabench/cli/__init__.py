"""CLI modules for QaoaBench."""

from qaoabench.cli.main import app

__all__ = ["app"]
