"""Pytest configuration and shared fixtures for QaoaBench tests."""

import os
from itertools import combinations

import numpy as np
import pytest

from qaoabench.config.schema import StoppingConfig
from qaoabench.core.bfgs import bfgs_maximize
from qaoabench.core.maxcut import MaxCutInstance, generate_random_3regular
from qaoabench.core.qaoa import analytic_gradient, objective
from qaoabench.core.shot_model import CostLedger

os.environ["NO_COLOR"] = "1"
os.environ["COLUMNS"] = "200"  # Wide terminal to prevent help text truncation
os.environ.pop("FORCE_COLOR", None)
os.environ.pop("CLICOLOR_FORCE", None)
os.environ.pop("RICH_FORCE_TERMINAL", None)


# =============================================================================
# Test Isolation
# =============================================================================


@pytest.fixture(autouse=True)
def isolate_working_directory(tmp_path, monkeypatch):
    """Run every test with tmp_path as cwd so no results or configs leak into the repo."""
    monkeypatch.chdir(tmp_path)


# =============================================================================
# Instance Fixtures
# =============================================================================


@pytest.fixture
def k4() -> MaxCutInstance:
    """Complete graph on 4 nodes: 6 clauses, max cut 4."""
    return MaxCutInstance(num_nodes=4, edges=tuple(combinations(range(4), 2)))


@pytest.fixture
def k33() -> MaxCutInstance:
    """Complete bipartite K_{3,3}: bipartite, so all 9 clauses can be satisfied."""
    edges = tuple((u, v) for u in range(3) for v in range(3, 6))
    return MaxCutInstance(num_nodes=6, edges=edges)


@pytest.fixture
def random_instance() -> MaxCutInstance:
    return generate_random_3regular(8, seed=7, instance_id=3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


# =============================================================================
# Oracles
# =============================================================================


def k4_p1_closed_form(gamma, beta):
    """Exact p=1 objective of K4 (works on numpy arrays)."""
    return (
        3.0
        + 3.0 * np.sin(4 * beta) * np.sin(gamma) * np.cos(gamma) ** 2
        - 1.5 * np.sin(2 * beta) ** 2 * np.sin(2 * gamma) ** 2
    )


@pytest.fixture(scope="session")
def k4_grid_optimum() -> tuple[float, np.ndarray]:
    """Grid-scan optimum of K4 at p=1 (400 x 200 over [0, 2pi) x [0, pi)), refined.

    Returns:
        (optimal objective, flat parameters)
    """
    k4 = MaxCutInstance(num_nodes=4, edges=tuple(combinations(range(4), 2)))
    gammas = np.linspace(0.0, 2 * np.pi, 400, endpoint=False)
    betas = np.linspace(0.0, np.pi, 200, endpoint=False)
    g, b = np.meshgrid(gammas, betas, indexing="ij")
    values = k4_p1_closed_form(g, b)
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    start = np.array([gammas[i], betas[j]])

    stopping = StoppingConfig(bfgs_grad_floor_scale=1e-10, bfgs_improvement_tol=1e-14)
    result = bfgs_maximize(
        lambda x: objective(k4, x),
        lambda x: analytic_gradient(k4, x),
        start,
        stopping,
        0.0,
        CostLedger(),
    )
    best = max(result.best_estimate, float(values[i, j]))
    return best, result.best_point
