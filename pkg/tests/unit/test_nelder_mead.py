"""Unit tests for qaoabench.core.nelder_mead."""

import numpy as np
import pytest

from qaoabench.config.schema import StoppingConfig
from qaoabench.core.errors import InvalidArgumentError, OptimizationError
from qaoabench.core.initial_points import initial_points
from qaoabench.core.nelder_mead import PlateauCounter, default_simplex, nelder_mead_maximize
from qaoabench.core.qaoa import objective
from qaoabench.core.shot_model import CostLedger
from qaoabench.core.trace import StopReason
from qaoabench.utils.constants import EVENT_STOP_REASON, EVENT_VERTEX_UPDATE


def quadratic(x):
    return -((x[0] - 1.0) ** 2) - (x[1] + 2.0) ** 2


class TestPlateauCounter:
    """Tests for the non-improvement counter."""

    def test_counts_until_limit(self):
        counter = PlateauCounter(2, StoppingConfig(), initial_best=0.0)
        assert counter.limit == 40
        for _ in range(39):
            counter.update(0.0)
        assert not counter.exhausted
        counter.update(0.0)
        assert counter.exhausted

    def test_improvement_resets(self):
        counter = PlateauCounter(2, StoppingConfig(), initial_best=0.0)
        counter.update(0.0)
        assert counter.update(0.5)
        assert counter.stalled == 0
        assert counter.best == 0.5

    def test_small_improvement_halves_alpha(self):
        stopping = StoppingConfig(nm_epsilon_half_threshold=0.05)
        counter = PlateauCounter(4, stopping, initial_best=0.0)
        assert counter.limit == 80
        counter.update(0.01)
        assert counter.active_alpha == 10
        assert counter.limit == 40
        counter.update(1.0)
        assert counter.limit == 80

    def test_no_threshold_keeps_alpha(self):
        counter = PlateauCounter(2, StoppingConfig(), initial_best=0.0)
        counter.update(1e-9)
        assert counter.active_alpha == 20


class TestDefaultSimplex:
    def test_axis_steps(self):
        simplex = default_simplex(np.array([0.2, 0.0]))
        np.testing.assert_allclose(simplex, [[0.2, 0.0], [0.21, 0.0], [0.2, 0.00025]])


class TestNelderMeadMaximize:
    """Tests for the simplex optimizer."""

    def test_finds_quadratic_maximum(self):
        result = nelder_mead_maximize(quadratic, np.zeros(2), StoppingConfig(), CostLedger())
        np.testing.assert_allclose(result.best_point, [1.0, -2.0], atol=1e-4)
        assert result.best_estimate == pytest.approx(0.0, abs=1e-8)

    def test_constant_function_stops_on_plateau(self):
        result = nelder_mead_maximize(lambda x: 1.0, np.zeros(2), StoppingConfig(), CostLedger())
        assert result.trace.stop_reason is StopReason.NM_PLATEAU
        assert result.trace.iterations == 2 * 20

    def test_max_updates(self):
        stopping = StoppingConfig(nm_max_updates=5)
        result = nelder_mead_maximize(quadratic, np.zeros(2), stopping, CostLedger())
        assert result.trace.stop_reason is StopReason.NM_MAX_UPDATES
        assert result.trace.iterations == 5

    def test_every_estimate_is_counted(self):
        calls = []

        def fn(x):
            calls.append(x.copy())
            return quadratic(x)

        result = nelder_mead_maximize(fn, np.zeros(2), StoppingConfig(nm_max_updates=10), CostLedger())
        assert result.trace.evaluations == len(calls)

    def test_trace_events(self):
        result = nelder_mead_maximize(quadratic, np.zeros(2), StoppingConfig(nm_max_updates=3), CostLedger())
        events = result.trace.events
        assert [e.tag for e in events[:3]] == [EVENT_VERTEX_UPDATE] * 3
        assert events[-1].tag == EVENT_STOP_REASON
        assert events[-1].detail == StopReason.NM_MAX_UPDATES.value
        assert events[-1].value == result.best_estimate

    def test_custom_simplex(self):
        simplex = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        result = nelder_mead_maximize(quadratic, simplex[0], StoppingConfig(), CostLedger(), simplex=simplex)
        np.testing.assert_allclose(result.best_point, [1.0, -2.0], atol=1e-4)

    def test_simplex_must_start_at_initial_point(self):
        simplex = np.array([[0.5, 0.0], [1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(InvalidArgumentError, match="Simplex"):
            nelder_mead_maximize(quadratic, np.zeros(2), StoppingConfig(), CostLedger(), simplex=simplex)

    def test_dimension_one_rejected(self):
        with pytest.raises(InvalidArgumentError, match="dimension"):
            nelder_mead_maximize(lambda x: 0.0, np.zeros(1), StoppingConfig(), CostLedger())

    def test_non_finite_estimate(self):
        with pytest.raises(OptimizationError, match="Non-finite"):
            nelder_mead_maximize(lambda x: float("nan"), np.zeros(2), StoppingConfig(), CostLedger())

    def test_k4_exact(self, k4, k4_grid_optimum):
        optimum, _ = k4_grid_optimum
        best = []
        for run_index in range(5):
            points = initial_points(1, run_index, base_seed=11)
            result = nelder_mead_maximize(
                lambda x: objective(k4, x),
                points.start,
                StoppingConfig(),
                CostLedger(),
                simplex=points.simplex,
            )
            assert result.best_estimate == pytest.approx(objective(k4, result.best_point))
            best.append(result.best_estimate)
        assert max(best) == pytest.approx(optimum, abs=1e-3)
        assert all(b <= optimum + 1e-9 for b in best)
