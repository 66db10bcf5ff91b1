"""Unit tests for qaoabench.core.shot_model."""

import math

import numpy as np
import pytest

from qaoabench.core.emulator import cost_operator_for, variance_diagonal
from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.gradient_circuit import (
    GeneratorPosition,
    build_gradient_circuit_state,
    cost_decomposition,
    term_measurements,
)
from qaoabench.core.maxcut import generate_random_3regular
from qaoabench.core.qaoa import analytic_gradient, objective
from qaoabench.core.shot_model import (
    CostCategory,
    CostLedger,
    MethodTag,
    NoisyOracle,
    PrecisionConfig,
    ag_component_cost,
    allocate_per_term_shots,
    ceil_repetitions,
    estimate_ag_gradient,
    estimate_fd_gradient,
    estimate_objective,
    estimate_objective_by_terms,
    fd_precision,
    noisy_value,
    objective_cost_bound,
    repetitions_for,
)


@pytest.fixture
def sixteen_nodes():
    return generate_random_3regular(16, seed=1)


class TestPrecisionConfig:
    """Tests for precision configurations and presets."""

    @pytest.mark.parametrize(
        "preset, label",
        [
            ("nm-0.1", "nm_e0.1"),
            ("fd-0.01-0.1", "fd_e0.01_d0.1"),
            ("fd-0.01-0.01", "fd_e0.01_d0.01"),
            ("ag-0.01-0.1", "ag_e0.01_g0.1"),
        ],
    )
    def test_preset_labels(self, preset, label):
        assert PrecisionConfig.from_preset(preset).label == label

    def test_exact_label_suffix(self):
        config = PrecisionConfig.from_preset("nm-0.01", exact=True)
        assert config.label == "nm_e0.01_exact"
        assert config.objective_precision == 0.0
        assert config.gradient_precision == 0.0

    def test_unknown_preset(self):
        with pytest.raises(InvalidArgumentError, match="Unknown preset"):
            PrecisionConfig.from_preset("nm-1")

    @pytest.mark.parametrize("field", ["epsilon", "delta", "epsilon_ag"])
    def test_non_positive_rejected(self, field):
        with pytest.raises(InvalidArgumentError, match=field):
            PrecisionConfig(**{field: 0.0})

    def test_method_coerced_from_string(self):
        assert PrecisionConfig(method="ag").method is MethodTag.AG

    def test_dict_round_trip(self):
        config = PrecisionConfig(MethodTag.AG, 0.01, 0.1, 0.05, exact=True)
        assert PrecisionConfig.from_dict(config.to_dict()) == config


class TestCostLedger:
    """Tests for repetition bookkeeping."""

    def test_charge_and_breakdown(self):
        ledger = CostLedger()
        ledger.charge(CostCategory.OBJECTIVE, 10)
        assert ledger.charge(CostCategory.ANALYTIC_GRADIENT, 5) == 15
        assert ledger.breakdown() == {
            "objective": 10,
            "finite_difference": 0,
            "analytic_gradient": 5,
        }

    def test_zero_charge_rejected(self):
        with pytest.raises(InvalidArgumentError, match="at least one"):
            CostLedger().charge(CostCategory.OBJECTIVE, 0)

    def test_ceil_tolerates_round_off(self):
        assert ceil_repetitions(600.0000000001) == 600
        assert ceil_repetitions(600.01) == 601
        assert ceil_repetitions(0.2) == 1

    def test_repetitions_for_exact_is_floor(self):
        assert repetitions_for(6.0, 0.0) == 1


class TestObjectiveEstimates:
    """Tests for noisy objective estimation and its cost."""

    def test_uniform_state_cost(self, sixteen_nodes, rng):
        """Var[C] = 6 on |s> for 24 clauses, so epsilon = 0.1 costs 600 repetitions."""
        ledger = CostLedger()
        estimate_objective(sixteen_nodes, np.zeros(2), 0.1, ledger, rng)
        assert ledger.objective == 600

    def test_halving_precision_quadruples_cost(self, sixteen_nodes, rng):
        ledger = CostLedger()
        estimate_objective(sixteen_nodes, np.zeros(2), 0.05, ledger, rng)
        assert ledger.objective == 2400

    @pytest.mark.parametrize("variance", [0.37, 6.0, 11.2])
    def test_cost_bound_scales_before_ceiling(self, variance):
        assert objective_cost_bound(variance, 0.05) == pytest.approx(4 * objective_cost_bound(variance, 0.1))
        assert repetitions_for(variance, 0.05) == math.ceil(objective_cost_bound(variance, 0.05) - 1e-6)

    def test_exact_mode(self, random_instance, rng):
        ledger = CostLedger()
        params = [0.3, 0.2]
        value = estimate_objective(random_instance, params, 0.0, ledger, rng)
        assert value == pytest.approx(objective(random_instance, params))
        assert ledger.total_repetitions == 1

    def test_noise_is_bounded(self, random_instance, rng):
        params = [0.4, 0.7]
        true = objective(random_instance, params)
        ledger = CostLedger()
        draws = [estimate_objective(random_instance, params, 0.1, ledger, rng) for _ in range(200)]
        assert max(abs(d - true) for d in draws) <= 0.1
        assert len(set(draws)) > 1

    def test_same_seed_same_noise(self, random_instance):
        a = estimate_objective(random_instance, [0.4, 0.7], 0.1, CostLedger(), np.random.default_rng(5))
        b = estimate_objective(random_instance, [0.4, 0.7], 0.1, CostLedger(), np.random.default_rng(5))
        assert a == b

    def test_noise_averages_out(self, rng):
        draws = np.array([noisy_value(2.5, 0.1, rng) for _ in range(10**5)])
        assert np.all(np.abs(draws - 2.5) <= 0.1)
        # uniform noise on [-0.1, 0.1] has standard deviation 0.1 / sqrt(3)
        assert abs(draws.mean() - 2.5) <= 5 * 0.1 / np.sqrt(3 * 10**5)

    def test_negative_precision(self, rng):
        with pytest.raises(InvalidArgumentError, match="non-negative"):
            noisy_value(1.0, -0.1, rng)

    def test_term_wise_exact(self, random_instance, rng):
        ledger = CostLedger()
        value = estimate_objective_by_terms(random_instance, [0.5, 0.1], 0.0, ledger, rng)
        assert value == pytest.approx(objective(random_instance, [0.5, 0.1]))
        assert ledger.objective == random_instance.num_clauses

    def test_term_wise_noise_is_bounded(self, k4, rng):
        params = [0.5, 0.1]
        value = estimate_objective_by_terms(k4, params, 0.1, CostLedger(), rng)
        # six terms, each within 0.1 / sqrt(6)
        assert abs(value - objective(k4, params)) <= 6 * 0.1 / np.sqrt(6) + 1e-12

    def test_allocate_per_term_shots(self):
        assert allocate_per_term_shots([0.5, 0.5], [1.0, 0.0], 0.1) == [50, 1]

    def test_allocate_length_mismatch(self):
        with pytest.raises(InvalidArgumentError, match="weights"):
            allocate_per_term_shots([0.5], [1.0, 1.0], 0.1)


class TestGradientEstimates:
    """Tests for finite-difference and analytical gradient estimates."""

    @pytest.mark.parametrize(
        "epsilon, delta, grad, expected",
        [
            (0.01, 0.1, 0.0, 0.001),
            (0.01, 0.1, 1.0, 0.01),
            (0.1, 0.01, 0.5, 0.01),
            (0.01, 0.1, 0.1, 0.1 / np.sqrt(2) * 0.1),
        ],
    )
    def test_fd_precision(self, epsilon, delta, grad, expected):
        assert fd_precision(epsilon, delta, grad) == pytest.approx(expected)

    def test_fd_precision_delta_cubed_bound(self):
        assert fd_precision(1e-6, 0.5, 0.0) == pytest.approx(0.125)

    def test_fd_exact_charges_two_per_component(self, k4, rng):
        config = PrecisionConfig(MethodTag.FD, 0.01, 0.01, exact=True)
        ledger = CostLedger()
        grad = estimate_fd_gradient(k4, [0.4, 0.3], config, ledger, rng)
        np.testing.assert_allclose(grad, analytic_gradient(k4, [0.4, 0.3]), atol=1e-3)
        assert ledger.finite_difference == 4
        assert ledger.objective == 0

    def test_fd_noise_is_bounded(self, random_instance, rng):
        config = PrecisionConfig(MethodTag.FD, 0.01, 0.1)
        params = [0.4, 0.3, 0.2, 0.1]
        grad = estimate_fd_gradient(random_instance, params, config, CostLedger(), rng)
        exact = estimate_fd_gradient(
            random_instance, params, config, CostLedger(), rng, precision_override=0.0
        )
        # two shifted values, each within epsilon
        assert np.all(np.abs(grad - exact) <= 2 * 0.01 / 0.1 + 1e-12)

    def test_fd_error_is_quadratic_in_delta(self, random_instance, rng):
        params = [0.4, 0.3, 0.2, 0.1]
        exact = analytic_gradient(random_instance, params)
        errors = []
        for delta in (0.1, 0.01):
            config = PrecisionConfig(MethodTag.FD, 0.01, delta)
            grad = estimate_fd_gradient(
                random_instance, params, config, CostLedger(), rng, precision_override=0.0
            )
            errors.append(np.linalg.norm(grad - exact))
        assert 50 < errors[0] / errors[1] < 200

    def test_fd_noise_averages_out(self, random_instance, rng):
        config = PrecisionConfig(MethodTag.FD, 0.01, 0.1)
        params = [0.4, 0.3, 0.2, 0.1]
        noiseless = estimate_fd_gradient(
            random_instance, params, config, CostLedger(), rng, precision_override=0.0
        )

        draws = np.array(
            [estimate_fd_gradient(random_instance, params, config, CostLedger(), rng) for _ in range(200)]
        )

        # each component is a difference of two uniform errors of width at most epsilon
        spread = np.sqrt(2.0 / 3.0) * 0.01 / 0.1
        assert np.all(np.abs(draws.mean(axis=0) - noiseless) <= 5 * spread / np.sqrt(200))

    def test_ag_component_cost(self):
        terms = [(1.0, 0.0, 0.5), (1.0, 0.0, 0.5)]
        # each of two terms at 0.1 / sqrt(2): 2 * 4 * 0.5 / 0.01 = 400
        assert ag_component_cost(terms, 0.1) == 800
        assert ag_component_cost([(1.0, 0.0, 0.5), (0.0, 0.0, 0.5)], 0.1) == 401
        assert ag_component_cost([(1.0, 0.0, 0.0)] * 3, 0.1) == 3
        assert ag_component_cost(terms, 0.0) == 2

    def test_ag_gamma_component_cost_on_k4(self, k4):
        """Each of the six clause terms is charged ceil(6 * 4 * 0.25 * Var / eps''^2)."""
        params = [0.4, 0.3]
        epsilon_ag = 0.1
        observable = cost_operator_for(k4).tensor_ancilla_z()
        variances = []
        for term in cost_decomposition(k4).terms:
            state = build_gradient_circuit_state(k4, params, 1, term, GeneratorPosition.GAMMA)
            variances.append(variance_diagonal(state, observable))

        cost = ag_component_cost(term_measurements(k4, params, GeneratorPosition.GAMMA, 1), epsilon_ag)

        assert cost == sum(math.ceil(6 * 4 * 0.25 * v / epsilon_ag**2) for v in variances)
        assert cost >= math.ceil(4 / epsilon_ag**2 * sum(0.25 * v for v in variances))

    def test_ag_ledger_sums_components(self, k4, rng):
        params = [0.4, 0.3]
        config = PrecisionConfig(MethodTag.AG, 0.1, 0.1, 0.1)
        ledger = CostLedger()

        estimate_ag_gradient(k4, params, config, ledger, rng)

        expected = sum(
            ag_component_cost(term_measurements(k4, params, position, 1), 0.1)
            for position in GeneratorPosition
        )
        assert ledger.analytic_gradient == expected

    def test_ag_gradient_costs_more_than_finite_difference(self):
        """At eps = eps'' = delta = 0.1 an analytical gradient is the dearer estimate."""
        fd_config = PrecisionConfig.from_preset("fd-0.1-0.1")
        ag_config = PrecisionConfig.from_preset("ag-0.1-0.1")
        for seed in range(3):
            instance = generate_random_3regular(8, seed=seed)
            points = np.random.default_rng(seed).uniform(0.0, np.pi, size=(3, 4))
            for point in points:
                fd_ledger, ag_ledger = CostLedger(), CostLedger()
                estimate_fd_gradient(instance, point, fd_config, fd_ledger, np.random.default_rng(0))
                estimate_ag_gradient(instance, point, ag_config, ag_ledger, np.random.default_rng(0))
                assert ag_ledger.analytic_gradient > fd_ledger.finite_difference

    def test_ag_exact_matches_analytic(self, k4, rng):
        config = PrecisionConfig(MethodTag.AG, exact=True)
        ledger = CostLedger()
        grad = estimate_ag_gradient(k4, [0.4, 0.3], config, ledger, rng)
        np.testing.assert_allclose(grad, analytic_gradient(k4, [0.4, 0.3]), atol=1e-10)
        # one repetition per generator term: six clause terms and four mixer terms
        assert ledger.analytic_gradient == 10

    def test_ag_noise_is_bounded(self, random_instance, rng):
        config = PrecisionConfig(MethodTag.AG, 0.01, 0.1, 0.1)
        params = [0.4, 0.3]
        grad = estimate_ag_gradient(random_instance, params, config, CostLedger(), rng)
        exact = analytic_gradient(random_instance, params)
        bound_gamma = np.sqrt(random_instance.num_clauses) * 0.1
        bound_beta = np.sqrt(random_instance.num_nodes) * 0.1
        assert abs(grad[0] - exact[0]) <= bound_gamma + 1e-12
        assert abs(grad[1] - exact[1]) <= bound_beta + 1e-12


class TestNoisyOracle:
    """Tests for the per-run estimator bundle."""

    def test_objective_charges_ledger(self, k4, rng):
        ledger = CostLedger()
        oracle = NoisyOracle(k4, PrecisionConfig(MethodTag.NM, 0.1), ledger, rng)
        oracle.objective(np.array([0.1, 0.2]))
        assert ledger.objective > 0

    def test_nelder_mead_has_no_gradient(self, k4, rng):
        oracle = NoisyOracle(k4, PrecisionConfig(MethodTag.NM), CostLedger(), rng)
        with pytest.raises(InvalidArgumentError, match="Nelder-Mead"):
            oracle.gradient(np.array([0.1, 0.2]))

    @pytest.mark.parametrize("method", [MethodTag.FD, MethodTag.AG])
    def test_gradient_dispatch(self, k4, rng, method):
        ledger = CostLedger()
        oracle = NoisyOracle(k4, PrecisionConfig(method, exact=True), ledger, rng)
        oracle.gradient(np.array([0.1, 0.2]))
        if method is MethodTag.FD:
            assert ledger.finite_difference == 4
        else:
            assert ledger.analytic_gradient == 10
