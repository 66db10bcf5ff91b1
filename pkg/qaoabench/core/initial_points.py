"""Random starting points shared by all methods of a run."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qaoabench.core.errors import InvalidArgumentError
from qaoabench.core.nelder_mead import default_simplex
from qaoabench.utils.constants import BETA_PERIOD, GAMMA_PERIOD
from qaoabench.utils.seeding import derive_seed, make_rng


@dataclass(frozen=True, eq=False)
class InitialPoints:
    """Start of the quasi-Newton runs and the Nelder-Mead simplex built around it."""

    run_index: int
    start: np.ndarray
    simplex: np.ndarray


def _uniform_point(depth: int, rng: np.random.Generator) -> np.ndarray:
    point = np.empty(2 * depth)
    point[0::2] = rng.uniform(0.0, GAMMA_PERIOD, size=depth)
    point[1::2] = rng.uniform(0.0, BETA_PERIOD, size=depth)
    return point


def initial_points(depth: int, run_index: int, base_seed: int) -> InitialPoints:
    """Draw the shared start and the Nelder-Mead simplex of one run.

    Gammas are uniform in [0, 2pi) and betas in [0, pi). The simplex has
    2p+1 vertices: the start followed by 2p independent uniform draws.
    The stream depends only on (base_seed, run_index), so every method of
    the same run sees the same points.

    Args:
        depth: Circuit depth p.
        run_index: Run number within the instance.
        base_seed: Seed of the instance/depth start stream.
    """
    if depth < 1:
        raise InvalidArgumentError(f"depth must be >= 1, got {depth}")
    rng = make_rng(derive_seed(base_seed, "start", run_index))
    start = _uniform_point(depth, rng)
    others = [_uniform_point(depth, rng) for _ in range(2 * depth)]
    simplex = np.vstack([start] + others)
    return InitialPoints(run_index, start, simplex)


def padded_start(previous: np.ndarray, depth: int, run_index: int) -> InitialPoints:
    """Warm start at depth p from a shallower optimum padded with (0, 0) layers.

    The simplex uses the default axis steps around the padded point.
    """
    flat = np.asarray(previous, dtype=np.float64).reshape(-1)
    missing = 2 * depth - flat.size
    if missing <= 0 or missing % 2:
        raise InvalidArgumentError(
            f"Cannot pad a point with {flat.size} entries to depth {depth}"
        )
    start = np.concatenate([flat, np.zeros(missing)])
    return InitialPoints(run_index, start, default_simplex(start))
