"""Configuration management for QaoaBench."""

from qaoabench.config.loader import ConfigError, ConfigLoader
from qaoabench.config.schema import QaoaBenchConfig

__all__ = ["ConfigError", "ConfigLoader", "QaoaBenchConfig"]
