"""Shared state and utilities for CLI commands."""

from rich.console import Console

from qaoabench.config import ConfigLoader
from qaoabench.core.shot_model import MethodTag, PrecisionConfig

# Initialize console (shared across all commands)
console = Console()

# Load config at module level so --help shows the effective defaults
_default_cfg = ConfigLoader.load(None)
_has_config_file = ConfigLoader.find_config() is not None
_cfg_note = " via config" if _has_config_file else ""


def bool_show_default(value: bool, true_word: str, false_word: str) -> str:
    """Generate show_default string for boolean flags.

    Args:
        value: The boolean value to display
        true_word: Word to show when value is True (e.g., "exact")
        false_word: Word to show when value is False (e.g., "noisy")

    Returns:
        String like "exact via config" or "noisy"
    """
    return f"{true_word if value else false_word}{_cfg_note}"


def value_show_default(value: object) -> str:
    return f"{value}{_cfg_note}"


METHOD_STYLES = {
    MethodTag.NM: "cyan",
    MethodTag.FD: "magenta",
    MethodTag.AG: "blue",
}


def method_markup(precision: PrecisionConfig, text: str | None = None) -> str:
    """Rich markup for a method name in its column color."""
    style = METHOD_STYLES[precision.method]
    return f"[{style}]{text or precision.method.value.upper()}[/{style}]"
