"""Configuration schema definitions for QaoaBench."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional


@dataclass
class ExperimentSettings:
    """Problem size and experiment protocol."""

    nodes: int = 10
    depths: list[int] = field(default_factory=lambda: [5])
    instances: int = 20
    runs: int = 16
    seed: int = 20180914
    out: Path = Path("results")
    warm_start: bool = False  # extra run per depth from the padded previous optimum
    workers: int = 1  # processes; 1 runs serially
    full_trace: bool = False  # keep every trace event in runs.jsonl


@dataclass
class PrecisionSettings:
    """Methods and their precision targets."""

    methods: list[str] = field(default_factory=lambda: ["nm", "fd", "ag"])
    presets: list[str] = field(default_factory=list)  # overrides methods when set
    epsilon: float = 0.01
    delta: float = 0.1
    epsilon_ag: float = 0.1
    exact: bool = False


@dataclass
class StoppingConfig:
    """Optimizer termination rules.

    Nelder-Mead stops when the best vertex has not improved during
    dim * alpha simplex updates (alpha drops to ``nm_alpha_halved`` once the
    latest improvement was below ``nm_epsilon_half_threshold``) or after
    ``nm_max_updates`` updates. BFGS stops on a flat gradient, on a small
    improvement after ``bfgs_min_directions`` line searches, or after
    ``bfgs_max_line_searches``.
    """

    nm_alpha: int = 20
    nm_alpha_halved: int = 10
    nm_epsilon_half_threshold: Optional[float] = None  # epsilon / 2 of the run
    nm_max_updates: int = 8000
    bfgs_grad_floor_scale: float = 1e-3
    bfgs_improvement_tol: float = 1e-4
    bfgs_min_directions: Optional[int] = None  # None means the dimension 2p
    bfgs_max_line_searches: int = 300


@dataclass
class LineSearchConfig:
    """Backtracking (sufficient increase) line search."""

    line_search_c: float = 1e-4
    line_search_contraction: float = 0.5
    line_search_initial_step: float = 1.0
    line_search_max_backtracks: int = 30


@dataclass
class LoggingConfig:
    """Logging configuration."""

    log_level: str = "info"
    color_output: bool = True
    log_to_file: bool = False


@dataclass
class QaoaBenchConfig:
    """Root configuration object."""

    version: str = "1.0"
    experiment: ExperimentSettings = field(default_factory=ExperimentSettings)
    precision: PrecisionSettings = field(default_factory=PrecisionSettings)
    stopping: StoppingConfig = field(default_factory=StoppingConfig)
    line_search: LineSearchConfig = field(default_factory=LineSearchConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
