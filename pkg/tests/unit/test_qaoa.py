"""Unit tests for qaoabench.core.qaoa."""

import numpy as np
import pytest

from qaoabench.core.emulator import cost_operator_for, variance_diagonal
from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.maxcut import brute_force_maximum, generate_random_3regular
from qaoabench.core.qaoa import (
    ParameterVector,
    analytic_gradient,
    as_flat,
    finite_difference_gradient,
    objective,
    prepare_state,
)
from tests.conftest import k4_p1_closed_form


def random_params(depth: int, rng: np.random.Generator) -> np.ndarray:
    flat = np.empty(2 * depth)
    flat[0::2] = rng.uniform(0, 2 * np.pi, depth)
    flat[1::2] = rng.uniform(0, np.pi, depth)
    return flat


class TestParameterVector:
    """Tests for the parameter container."""

    def test_flat_order_interleaves(self):
        params = ParameterVector((0.1, 0.2), (0.3, 0.4))
        np.testing.assert_array_equal(params.to_flat(), [0.1, 0.3, 0.2, 0.4])
        assert ParameterVector.from_flat([0.1, 0.3, 0.2, 0.4]) == params
        assert params.depth == 2

    def test_mismatched_lengths(self):
        with pytest.raises(InvalidArgumentError, match="differ in length"):
            ParameterVector((0.1,), ())

    def test_odd_flat_length(self):
        with pytest.raises(InvalidArgumentError, match="even length"):
            as_flat([0.1, 0.2, 0.3])

    def test_canonical_wraps(self):
        params = ParameterVector((7.0,), (-0.5,)).canonical()
        assert params.gammas[0] == pytest.approx(7.0 - 2 * np.pi)
        assert params.betas[0] == pytest.approx(np.pi - 0.5)

    def test_padded(self):
        padded = ParameterVector((0.1,), (0.2,)).padded()
        assert padded.gammas == (0.1, 0.0)
        assert padded.betas == (0.2, 0.0)


class TestObjective:
    """Tests for F_p."""

    def test_zero_params_give_half_the_clauses(self, random_instance):
        value = objective(random_instance, ParameterVector.zeros(2))
        assert value == pytest.approx(random_instance.num_clauses / 2)

    def test_state_is_normalized(self, random_instance, rng):
        state = prepare_state(random_instance, random_params(3, rng))
        assert state.norm() == pytest.approx(1.0)

    def test_matches_k4_closed_form(self, k4, rng):
        for _ in range(10):
            gamma, beta = rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi)
            assert objective(k4, [gamma, beta]) == pytest.approx(
                k4_p1_closed_form(gamma, beta), abs=1e-12
            )

    def test_never_exceeds_max_cut(self, random_instance, rng):
        best, _ = brute_force_maximum(random_instance)
        for depth in (1, 2, 3):
            assert objective(random_instance, random_params(depth, rng)) <= best + 1e-12

    def test_zero_layer_padding_is_invariant(self, rng):
        """F_{p+1} with an appended (0, 0) layer equals F_p."""
        for draw in range(20):
            inst = generate_random_3regular(6, seed=draw)
            depth = 1 + draw % 3
            params = ParameterVector.from_flat(random_params(depth, rng))
            assert objective(inst, params.padded()) == pytest.approx(
                objective(inst, params), abs=1e-12
            )

    def test_gamma_period(self, random_instance, rng):
        flat = random_params(2, rng)
        shifted = flat.copy()
        shifted[0] += 2 * np.pi
        assert objective(random_instance, shifted) == pytest.approx(
            objective(random_instance, flat), abs=1e-10
        )


    def test_sampled_mean_matches_exact_objective(self, random_instance, rng):
        """Averaging 10^6 measured clause counts recovers F_p."""
        flat = random_params(2, rng)
        state = prepare_state(random_instance, flat)
        cost = cost_operator_for(random_instance)
        probabilities = np.abs(state.amplitudes) ** 2

        samples = rng.choice(probabilities.size, size=10**6, p=probabilities / probabilities.sum())
        sampled_mean = cost.diag[samples].mean()

        tolerance = 5.0 * np.sqrt(variance_diagonal(state, cost) / 10**6)
        assert abs(sampled_mean - objective(random_instance, flat)) <= tolerance


class TestGradients:
    """Tests for the analytic and finite-difference gradients."""

    def test_analytic_matches_central_differences(self, rng):
        for draw in range(20):
            inst = generate_random_3regular(8, seed=100 + draw)
            flat = random_params(1 + draw % 3, rng)
            analytic = analytic_gradient(inst, flat)
            numeric = finite_difference_gradient(inst, flat, delta=1e-5)
            np.testing.assert_allclose(analytic, numeric, atol=1e-5)

    def test_zero_params_have_zero_gradient(self, random_instance):
        grad = analytic_gradient(random_instance, np.zeros(6))
        np.testing.assert_allclose(grad, 0.0, atol=1e-12)

    def test_k4_closed_form_derivatives(self, k4):
        gamma, beta = 0.4, 0.3
        h = 1e-6
        d_gamma = (k4_p1_closed_form(gamma + h, beta) - k4_p1_closed_form(gamma - h, beta)) / (2 * h)
        d_beta = (k4_p1_closed_form(gamma, beta + h) - k4_p1_closed_form(gamma, beta - h)) / (2 * h)
        np.testing.assert_allclose(analytic_gradient(k4, [gamma, beta]), [d_gamma, d_beta], atol=1e-6)

    def test_finite_difference_uses_evaluator(self, k4):
        calls = []

        def evaluator(x):
            calls.append(x.copy())
            return float(x.sum())

        grad = finite_difference_gradient(k4, [0.1, 0.2], 0.1, evaluator=evaluator)
        np.testing.assert_allclose(grad, [1.0, 1.0])
        assert len(calls) == 4

    def test_finite_difference_rejects_non_positive_delta(self, k4):
        with pytest.raises(InvalidArgumentError, match="delta"):
            finite_difference_gradient(k4, [0.1, 0.2], 0.0)
