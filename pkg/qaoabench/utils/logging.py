"""Logging setup for QaoaBench."""

import logging
import sys
from pathlib import Path
from typing import Optional

_PLAIN_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
_WORKER_FORMAT = "%(asctime)s - %(processName)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(
    level: str = "INFO",
    log_file: Optional[Path] = None,
    use_colors: bool = True,
) -> logging.Logger:
    """
    Set up logging for QaoaBench.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional file path for logging
        use_colors: Whether to log through rich (falls back to plain text)

    Returns:
        Root logger for qaoabench
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)

    handler: logging.Handler
    if use_colors:
        try:
            from rich.logging import RichHandler
            handler = RichHandler(
                show_time=True,
                show_path=False,
                markup=False,
                rich_tracebacks=True,
            )
            formatter = logging.Formatter("%(message)s")
        except ImportError:
            handler = logging.StreamHandler(sys.stderr)
            formatter = logging.Formatter(_PLAIN_FORMAT, datefmt=_DATE_FORMAT)
    else:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(_PLAIN_FORMAT, datefmt=_DATE_FORMAT)

    handler.setFormatter(formatter)
    handler.setLevel(numeric_level)

    logger = logging.getLogger("qaoabench")
    logger.setLevel(numeric_level)
    logger.handlers.clear()
    logger.addHandler(handler)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(_PLAIN_FORMAT, datefmt=_DATE_FORMAT))
        file_handler.setLevel(numeric_level)
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger for a specific module.

    Args:
        name: Module name (will be prefixed with 'qaoabench.')

    Returns:
        Logger instance
    """
    if not name.startswith("qaoabench"):
        name = f"qaoabench.{name}"
    return logging.getLogger(name)


def configure_worker_logging(level: int) -> None:
    """Process-pool initializer: plain stderr logging tagged with the worker name.

    Replaces any inherited handlers with a single one at ``level``.
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_WORKER_FORMAT, datefmt=_DATE_FORMAT))
    handler.setLevel(level)

    logger = logging.getLogger("qaoabench")
    logger.setLevel(level)
    logger.handlers.clear()
    logger.addHandler(handler)
