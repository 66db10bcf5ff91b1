"""Entry point for running QaoaBench as a module: python -m qaoabench"""

from qaoabench.cli.main import app

if __name__ == "__main__":
    app()
