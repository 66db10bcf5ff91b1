"""Configuration loading and validation for QaoaBench."""

import dataclasses
import logging
from pathlib import Path
from typing import Any, Optional

import yaml

from qaoabench.config.schema import (
    ExperimentSettings,
    LineSearchConfig,
    LoggingConfig,
    PrecisionSettings,
    QaoaBenchConfig,
    StoppingConfig,
)
from qaoabench.utils.constants import LOG_LEVELS, METHOD_TAGS, PRECISION_PRESETS

logger = logging.getLogger(__name__)

_SECTIONS = (ExperimentSettings, PrecisionSettings, StoppingConfig, LineSearchConfig, LoggingConfig)


class ConfigError(Exception):
    """Configuration error."""

    pass


def _as_list(value: Any) -> list[Any]:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


class ConfigLoader:
    """Loads configuration from a flat YAML mapping.

    Every key names one setting (the CLI flag with underscores); the
    loader distributes them over the dataclass sections.
    """

    DEFAULT_CONFIG_PATHS = [
        Path("qaoabench.yaml"),
        Path("qaoabench.yml"),
        Path(".qaoabench/config.yaml"),
        Path(".qaoabench/config.yml"),
    ]

    @classmethod
    def find_config(cls) -> Optional[Path]:
        """First existing default config path, if any."""
        for default_path in cls.DEFAULT_CONFIG_PATHS:
            if default_path.exists():
                return default_path
        return None

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> QaoaBenchConfig:
        """
        Load configuration.

        Priority:
        1. Explicit config_path argument
        2. Default config paths (first found)
        3. Built-in defaults

        Args:
            config_path: Optional explicit path to config file

        Returns:
            QaoaBenchConfig object

        Raises:
            ConfigError: If config file cannot be read or parsed
        """
        config_dict: dict[str, Any] = {}

        if config_path:
            if not config_path.exists():
                raise ConfigError(f"Config file not found: {config_path}")
            config_dict = cls._load_yaml(config_path)
        else:
            default_path = cls.find_config()
            if default_path is not None:
                logger.info(f"Loading config from {default_path}")
                config_dict = cls._load_yaml(default_path)

        return cls._build_config(config_dict)

    @classmethod
    def _load_yaml(cls, path: Path) -> dict[str, Any]:
        """Load YAML file and return dict."""
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {path}: {e}")
        except OSError as e:
            raise ConfigError(f"Cannot read {path}: {e}")
        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigError(f"{path} must contain a mapping of settings")
        return data

    @classmethod
    def known_keys(cls) -> set[str]:
        keys = {"version"}
        for section in _SECTIONS:
            keys.update(f.name for f in dataclasses.fields(section))
        return keys

    @classmethod
    def _build_config(cls, data: dict[str, Any]) -> QaoaBenchConfig:
        """Build QaoaBenchConfig from a flat dictionary."""
        unknown = sorted(set(data) - cls.known_keys())
        for key in unknown:
            logger.warning(f"Ignoring unknown config key: {key}")
        try:
            return QaoaBenchConfig(
                version=str(data.get("version", "1.0")),
                experiment=cls._build_experiment(data),
                precision=cls._build_precision(data),
                stopping=cls._build_stopping(data),
                line_search=cls._build_line_search(data),
                logging=cls._build_logging(data),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid config value: {e}")

    @classmethod
    def _build_experiment(cls, data: dict[str, Any]) -> ExperimentSettings:
        config = ExperimentSettings()
        if "nodes" in data:
            config.nodes = int(data["nodes"])
        if "depths" in data:
            config.depths = [int(p) for p in _as_list(data["depths"])]
        if "instances" in data:
            config.instances = int(data["instances"])
        if "runs" in data:
            config.runs = int(data["runs"])
        if "seed" in data:
            config.seed = int(data["seed"])
        if "out" in data and data["out"]:
            config.out = Path(data["out"])
        if "warm_start" in data:
            config.warm_start = bool(data["warm_start"])
        if "workers" in data:
            config.workers = int(data["workers"])
        if "full_trace" in data:
            config.full_trace = bool(data["full_trace"])
        return config

    @classmethod
    def _build_precision(cls, data: dict[str, Any]) -> PrecisionSettings:
        config = PrecisionSettings()
        if "methods" in data:
            config.methods = [str(m).lower() for m in _as_list(data["methods"])]
        if "presets" in data:
            config.presets = [str(p) for p in _as_list(data["presets"])]
        if "epsilon" in data:
            config.epsilon = float(data["epsilon"])
        if "delta" in data:
            config.delta = float(data["delta"])
        if "epsilon_ag" in data:
            config.epsilon_ag = float(data["epsilon_ag"])
        if "exact" in data:
            config.exact = bool(data["exact"])
        return config

    @classmethod
    def _build_stopping(cls, data: dict[str, Any]) -> StoppingConfig:
        config = StoppingConfig()
        if "nm_alpha" in data:
            config.nm_alpha = int(data["nm_alpha"])
        if "nm_alpha_halved" in data:
            config.nm_alpha_halved = int(data["nm_alpha_halved"])
        if "nm_epsilon_half_threshold" in data:
            value = data["nm_epsilon_half_threshold"]
            config.nm_epsilon_half_threshold = float(value) if value is not None else None
        if "nm_max_updates" in data:
            config.nm_max_updates = int(data["nm_max_updates"])
        if "bfgs_grad_floor_scale" in data:
            config.bfgs_grad_floor_scale = float(data["bfgs_grad_floor_scale"])
        if "bfgs_improvement_tol" in data:
            config.bfgs_improvement_tol = float(data["bfgs_improvement_tol"])
        if "bfgs_min_directions" in data:
            value = data["bfgs_min_directions"]
            config.bfgs_min_directions = int(value) if value is not None else None
        if "bfgs_max_line_searches" in data:
            config.bfgs_max_line_searches = int(data["bfgs_max_line_searches"])
        return config

    @classmethod
    def _build_line_search(cls, data: dict[str, Any]) -> LineSearchConfig:
        config = LineSearchConfig()
        if "line_search_c" in data:
            config.line_search_c = float(data["line_search_c"])
        if "line_search_contraction" in data:
            config.line_search_contraction = float(data["line_search_contraction"])
        if "line_search_initial_step" in data:
            config.line_search_initial_step = float(data["line_search_initial_step"])
        if "line_search_max_backtracks" in data:
            config.line_search_max_backtracks = int(data["line_search_max_backtracks"])
        return config

    @classmethod
    def _build_logging(cls, data: dict[str, Any]) -> LoggingConfig:
        config = LoggingConfig()
        if "log_level" in data:
            config.log_level = str(data["log_level"])
        if "color_output" in data:
            config.color_output = bool(data["color_output"])
        if "log_to_file" in data:
            config.log_to_file = bool(data["log_to_file"])
        return config

    @classmethod
    def to_flat_dict(cls, config: QaoaBenchConfig) -> dict[str, Any]:
        """Flat mapping of every setting, as a config file would hold it."""
        flat: dict[str, Any] = {"version": config.version}
        for section in (
            config.experiment,
            config.precision,
            config.stopping,
            config.line_search,
            config.logging,
        ):
            for f in dataclasses.fields(section):
                value = getattr(section, f.name)
                flat[f.name] = str(value) if isinstance(value, Path) else value
        return flat

    @classmethod
    def validate(cls, config: QaoaBenchConfig) -> list[str]:
        """
        Validate configuration and return list of errors.

        Args:
            config: Configuration to validate

        Returns:
            List of error messages (empty if valid)
        """
        errors: list[str] = []
        exp = config.experiment

        if exp.nodes < 4 or exp.nodes % 2:
            errors.append(f"nodes must be even and >= 4, got {exp.nodes}")
        if not exp.depths:
            errors.append("depths must not be empty")
        elif min(exp.depths) < 1:
            errors.append(f"depths must all be >= 1, got {exp.depths}")
        if exp.instances < 1:
            errors.append(f"instances must be >= 1, got {exp.instances}")
        if exp.runs < 1:
            errors.append(f"runs must be >= 1, got {exp.runs}")
        if exp.workers < 1:
            errors.append(f"workers must be >= 1, got {exp.workers}")

        prec = config.precision
        for method in prec.methods:
            if method not in METHOD_TAGS:
                errors.append(f"Invalid method: {method}. Must be one of: {list(METHOD_TAGS)}")
        for preset in prec.presets:
            if preset not in PRECISION_PRESETS:
                errors.append(f"Invalid preset: {preset}. Must be one of: {list(PRECISION_PRESETS)}")
        if not prec.methods and not prec.presets:
            errors.append("At least one method or preset is required")
        for name in ("epsilon", "delta", "epsilon_ag"):
            if not getattr(prec, name) > 0:
                errors.append(f"{name} must be positive")

        stop = config.stopping
        for name in ("nm_alpha", "nm_alpha_halved", "nm_max_updates", "bfgs_max_line_searches"):
            if getattr(stop, name) < 1:
                errors.append(f"{name} must be at least 1")
        if stop.bfgs_min_directions is not None and stop.bfgs_min_directions < 1:
            errors.append("bfgs_min_directions must be at least 1")
        if stop.bfgs_grad_floor_scale < 0 or stop.bfgs_improvement_tol < 0:
            errors.append("BFGS tolerances must be non-negative")

        ls = config.line_search
        if not 0 < ls.line_search_c < 1:
            errors.append("line_search_c must be between 0 and 1")
        if not 0 < ls.line_search_contraction < 1:
            errors.append("line_search_contraction must be between 0 and 1")
        if ls.line_search_initial_step <= 0:
            errors.append("line_search_initial_step must be positive")
        if ls.line_search_max_backtracks < 1:
            errors.append("line_search_max_backtracks must be at least 1")

        if config.logging.log_level.lower() not in LOG_LEVELS:
            errors.append(f"Invalid logging level: {config.logging.log_level}")

        return errors
