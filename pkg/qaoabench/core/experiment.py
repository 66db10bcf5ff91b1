"""Experiment orchestration: instances x depths x methods x runs.

Every random stream is derived from the master seed and the labels of the
task that consumes it, so results do not depend on execution order or on
the number of worker processes.
"""

from __future__ import annotations

import dataclasses
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from qaoabench.config.schema import LineSearchConfig, QaoaBenchConfig, StoppingConfig
from qaoabench.core.bfgs import bfgs_maximize
from qaoabench.core.errors import InvalidArgumentError, QaoaBenchError
from qaoabench.core.initial_points import InitialPoints, initial_points, padded_start
from qaoabench.core.maxcut import MaxCutInstance, brute_force_maximum, generate_random_3regular
from qaoabench.core.nelder_mead import nelder_mead_maximize
from qaoabench.core.qaoa import ParamsLike, objective
from qaoabench.core.run_record import InstanceSummary, RunRecord
from qaoabench.core.shot_model import CostLedger, MethodTag, NoisyOracle, PrecisionConfig
from qaoabench.core.trace import OptimizerResult, OptimizerTrace
from qaoabench.utils.constants import EVENT_STOP_REASON
from qaoabench.utils.logging import configure_worker_logging
from qaoabench.utils.seeding import derive_seed, make_rng

logger = logging.getLogger(__name__)


def compute_ratio(instance: MaxCutInstance, params: ParamsLike, max_cut: Optional[int] = None) -> float:
    """Fraction of satisfied clauses: exact F_p(params) / max C(z).

    Args:
        instance: Problem instance.
        params: QAOA parameters.
        max_cut: Known optimum; brute-forced when omitted.
    """
    if max_cut is None:
        max_cut, _ = brute_force_maximum(instance)
    if max_cut <= 0:
        raise InvalidArgumentError(f"Instance {instance.instance_id} has no cuttable edge")
    return objective(instance, params) / max_cut


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved protocol of one experiment."""

    num_nodes: int
    depths: tuple[int, ...]
    num_instances: int
    runs_per_instance: int
    methods: tuple[PrecisionConfig, ...]
    master_seed: int
    output_dir: Path = Path("results")
    stopping: StoppingConfig = field(default_factory=StoppingConfig)
    line_search: LineSearchConfig = field(default_factory=LineSearchConfig)
    warm_start: bool = False
    workers: int = 1
    full_trace: bool = False

    def __post_init__(self) -> None:
        if self.num_nodes < 4 or self.num_nodes % 2:
            raise InvalidArgumentError(f"nodes must be even and >= 4, got {self.num_nodes}")
        if not self.depths or min(self.depths) < 1:
            raise InvalidArgumentError(f"depths must all be >= 1, got {list(self.depths)}")
        if self.num_instances < 1:
            raise InvalidArgumentError(f"instances must be >= 1, got {self.num_instances}")
        if self.runs_per_instance < 1:
            raise InvalidArgumentError(f"runs must be >= 1, got {self.runs_per_instance}")
        if not self.methods:
            raise InvalidArgumentError("At least one method is required")
        labels = [m.label for m in self.methods]
        if len(set(labels)) != len(labels):
            raise InvalidArgumentError(f"Duplicate method configurations: {labels}")
        if self.workers < 1:
            raise InvalidArgumentError(f"workers must be >= 1, got {self.workers}")
        object.__setattr__(self, "depths", tuple(sorted(set(self.depths))))

    @classmethod
    def from_settings(
        cls, cfg: QaoaBenchConfig, methods: list[PrecisionConfig]
    ) -> "ExperimentConfig":
        exp = cfg.experiment
        return cls(
            num_nodes=exp.nodes,
            depths=tuple(exp.depths),
            num_instances=exp.instances,
            runs_per_instance=exp.runs,
            methods=tuple(methods),
            master_seed=exp.seed,
            output_dir=Path(exp.out),
            stopping=cfg.stopping,
            line_search=cfg.line_search,
            warm_start=exp.warm_start,
            workers=exp.workers,
            full_trace=exp.full_trace,
        )

    def stopping_for(self, precision: PrecisionConfig) -> StoppingConfig:
        """Stopping rules of one method; the NM halving threshold defaults to epsilon / 2."""
        if self.stopping.nm_epsilon_half_threshold is not None:
            return self.stopping
        return dataclasses.replace(
            self.stopping, nm_epsilon_half_threshold=precision.epsilon / 2
        )


@dataclass
class InstanceOutcome:
    """Everything produced for one instance (or the reason it failed)."""

    instance: MaxCutInstance
    max_cut: int = 0
    records: list[RunRecord] = field(default_factory=list)
    summaries: list[InstanceSummary] = field(default_factory=list)
    error: Optional[str] = None


@dataclass
class ExperimentResult:
    """Sorted records and summaries of an experiment plus per-instance failures."""

    config: ExperimentConfig
    instances: list[MaxCutInstance] = field(default_factory=list)
    records: list[RunRecord] = field(default_factory=list)
    summaries: list[InstanceSummary] = field(default_factory=list)
    failures: list[tuple[int, str]] = field(default_factory=list)


def instance_seed(master_seed: int, instance_id: int) -> int:
    return derive_seed(master_seed, "instance", instance_id)


def start_seed(master_seed: int, instance_id: int, depth: int) -> int:
    """Base seed of the start points shared by all methods of (instance, depth)."""
    return derive_seed(master_seed, "start", instance_id, depth)


def noise_seed(
    master_seed: int, instance_id: int, depth: int, precision: PrecisionConfig, run_index: int
) -> int:
    return derive_seed(master_seed, "noise", instance_id, depth, precision.label, run_index)


def optimize(
    instance: MaxCutInstance,
    precision: PrecisionConfig,
    points: InitialPoints,
    stopping: StoppingConfig,
    line_search: LineSearchConfig,
    rng: np.random.Generator,
) -> OptimizerResult:
    """Run the optimizer of ``precision.method`` from the given points."""
    ledger = CostLedger()
    oracle = NoisyOracle(instance, precision, ledger, rng)
    if precision.method is MethodTag.NM:
        return nelder_mead_maximize(
            oracle.objective, points.start, stopping, ledger, simplex=points.simplex
        )
    delta_for_floor = precision.delta if precision.method is MethodTag.FD else 0.0
    return bfgs_maximize(
        oracle.objective,
        oracle.gradient,
        points.start,
        stopping,
        delta_for_floor,
        ledger,
        line_search,
    )


def ratio_trajectory(
    instance: MaxCutInstance, trace: OptimizerTrace, max_cut: int, final_ratio: float
) -> list[tuple[int, float]]:
    """Exact ratio of the run's current incumbent versus cumulative cost.

    One point per event at which the optimizer's own best estimate improved.
    The exact ratio of a noisy incumbent can fall, so no running maximum is
    taken. The last point is (total repetitions, final_ratio).
    """
    points: list[tuple[int, float]] = []
    for event in trace.incumbents():
        if event.tag == EVENT_STOP_REASON:
            continue
        ratio = objective(instance, np.asarray(event.point)) / max_cut
        points.append((event.cumulative_repetitions, float(ratio)))
    total = trace.ledger.total_repetitions
    if points and points[-1][0] == total:
        points.pop()
    points.append((total, float(final_ratio)))
    return points


def execute_run(
    instance: MaxCutInstance,
    max_cut: int,
    depth: int,
    precision: PrecisionConfig,
    points: InitialPoints,
    config: ExperimentConfig,
    warm_start: bool = False,
) -> RunRecord:
    """One optimization run turned into its RunRecord."""
    seed = noise_seed(config.master_seed, instance.instance_id, depth, precision, points.run_index)
    result = optimize(
        instance,
        precision,
        points,
        config.stopping_for(precision),
        config.line_search,
        make_rng(seed),
    )
    trace = result.trace
    if config.full_trace:
        events = list(trace.events)
    else:
        events = [e for e in trace.incumbents() if e.tag != EVENT_STOP_REASON]
        events.append(trace.events[-1])
    assert trace.stop_reason is not None
    final_ratio = compute_ratio(instance, result.best_point, max_cut)
    return RunRecord(
        instance_id=instance.instance_id,
        depth=depth,
        precision=precision,
        run_index=points.run_index,
        seed=seed,
        final_params=[float(v) for v in result.best_point],
        final_ratio=final_ratio,
        best_estimate=result.best_estimate,
        noisy_ratio=result.best_estimate / max_cut,
        total_repetitions=trace.ledger.total_repetitions,
        ledger=trace.ledger.breakdown(),
        stop_reason=trace.stop_reason.value,
        evaluations=trace.evaluations,
        iterations=trace.iterations,
        warm_start=warm_start,
        trajectory=ratio_trajectory(instance, trace, max_cut, final_ratio),
        events=events,
    )


def run_instance(config: ExperimentConfig, instance_id: int) -> InstanceOutcome:
    """All depths, methods and runs of one instance.

    Library errors are caught and reported on the outcome so that one bad
    instance does not abort the sweep.
    """
    instance = generate_random_3regular(
        config.num_nodes, instance_seed(config.master_seed, instance_id), instance_id
    )
    outcome = InstanceOutcome(instance)
    try:
        outcome.max_cut, _ = brute_force_maximum(instance)
        best_by_method: dict[str, RunRecord] = {}
        for depth in config.depths:
            base = start_seed(config.master_seed, instance_id, depth)
            starts = [initial_points(depth, r, base) for r in range(config.runs_per_instance)]
            for precision in config.methods:
                group = [
                    execute_run(instance, outcome.max_cut, depth, precision, points, config)
                    for points in starts
                ]
                previous = best_by_method.get(precision.label)
                if config.warm_start and previous is not None:
                    warm = padded_start(
                        np.asarray(previous.final_params), depth, config.runs_per_instance
                    )
                    group.append(
                        execute_run(
                            instance, outcome.max_cut, depth, precision, warm, config, warm_start=True
                        )
                    )
                summary = InstanceSummary.from_runs(group, outcome.max_cut)
                best_by_method[precision.label] = next(
                    r for r in group if r.run_index == summary.best_run_index
                )
                outcome.records.extend(group)
                outcome.summaries.append(summary)
                logger.info(
                    f"Instance {instance_id} p={depth} {precision.label}: "
                    f"best ratio {summary.best_ratio:.4f}, cost {summary.total_repetitions}"
                )
    except QaoaBenchError as e:
        logger.warning(f"Instance {instance_id} failed: {e}")
        outcome.error = str(e)
    return outcome


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run the whole protocol and gather deterministically ordered results.

    Instances run serially or, with ``workers > 1``, in a process pool.
    """
    logger.info(
        f"Experiment: N={config.num_nodes}, depths={list(config.depths)}, "
        f"{config.num_instances} instance(s) x {config.runs_per_instance} run(s), "
        f"methods={[m.label for m in config.methods]}"
    )
    ids = list(range(config.num_instances))
    outcomes: dict[int, InstanceOutcome] = {}
    if config.workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(
            max_workers=config.workers,
            initializer=configure_worker_logging,
            initargs=(logging.getLogger("qaoabench").getEffectiveLevel(),),
        ) as executor:
            fut_to_id = {executor.submit(run_instance, config, i): i for i in ids}
            for fut in as_completed(fut_to_id):
                outcomes[fut_to_id[fut]] = fut.result()
    else:
        for i in ids:
            outcomes[i] = run_instance(config, i)

    result = ExperimentResult(config)
    for i in ids:
        outcome = outcomes[i]
        result.instances.append(outcome.instance)
        if outcome.error is not None:
            result.failures.append((i, outcome.error))
            continue
        result.records.extend(outcome.records)
        result.summaries.extend(outcome.summaries)

    result.records.sort(key=lambda r: r.sort_key)
    result.summaries.sort(key=lambda s: (s.instance_id, s.method, s.depth))
    if result.failures:
        logger.warning(f"{len(result.failures)} instance(s) failed")
    return result
