"""Reconstruction of a k-spike mixture on [0, 1] from its first K moments."""

import itertools
import logging
import math
import warnings
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import ContractError, ReconstructionError
from ..lp import solve_lp
from ..measures import DiscreteMeasure
from .frequency import FrequencyKind, FrequencyVector
from .result import Reconstruction

logger = logging.getLogger(__name__)

DEFAULT_SLACK_CONSTANT = 4.0
ENUMERATION_MAX_GRID = 32
ENUMERATION_MAX_SPIKES = 3
TIE_TOLERANCE = 1e-10


def moment_grid(tau: float) -> np.ndarray:
    """Return the grid {0, τ, 2τ, ..., 1}; 1/τ is rounded to the nearest integer."""
    if not 0 < tau <= 1:
        raise ContractError(f"tau must lie in (0, 1], got {tau}")
    steps = max(1, int(round(1.0 / tau)))
    return np.linspace(0.0, 1.0, steps + 1)


def _min_residual(powers: np.ndarray, targets: np.ndarray) -> Tuple[float, np.ndarray]:
    """Minimize max_i |Σ_j x_j powers[i, j] − targets[i]| over probability vectors x."""
    rows, cols = powers.shape
    deviation = -np.ones((rows, 1))
    A_ub = np.vstack([np.hstack([powers, deviation]), np.hstack([-powers, deviation])])
    b_ub = np.concatenate([targets, -targets])
    A_eq = np.concatenate([np.ones(cols), [0.0]]).reshape(1, -1)
    c = np.zeros(cols + 1)
    c[-1] = 1.0
    solution = solve_lp(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=np.array([1.0]), method="highs-ds")
    x = np.clip(solution.x[:cols], 0.0, None)
    x = x / x.sum()
    return float(np.max(np.abs(powers @ x - targets))), x


def _search_supports(powers: np.ndarray, targets: np.ndarray, k: int) -> Tuple[float, Sequence[int], np.ndarray]:
    size = min(k, powers.shape[1])
    supports = itertools.combinations(range(powers.shape[1]), size)
    first = next(supports)
    best = (*_min_residual(powers[:, first], targets), first)
    for support in supports:
        residual, x = _min_residual(powers[:, support], targets)
        # combinations() yields supports in lexicographic order, so ties keep the earliest
        if residual < best[0] - TIE_TOLERANCE:
            best = (residual, x, support)
    residual, x, support = best
    return residual, support, x


def _greedy_merge(grid: np.ndarray, weights: np.ndarray, k: int) -> np.ndarray:
    """Merge the closest neighbouring spikes until at most k remain; returns grid indices."""
    support = [int(j) for j in np.flatnonzero(weights > 1e-12)]
    mass = {j: float(weights[j]) for j in support}
    while len(support) > k:
        gaps = [grid[support[m + 1]] - grid[support[m]] for m in range(len(support) - 1)]
        m = int(np.argmin(gaps))
        left, right = support[m], support[m + 1]
        centre = (grid[left] * mass[left] + grid[right] * mass[right]) / (mass[left] + mass[right])
        total = mass.pop(left) + mass.pop(right)
        merged = int(np.argmin(np.abs(grid - centre)))
        # only live support points keep an entry in mass
        total += mass.pop(merged, 0.0)
        support[m : m + 2] = [merged]
        mass[merged] = total
        support = sorted(set(support))
    return np.array(support, dtype=int)


def reconstruct_kspike_1d(
    moments: FrequencyVector,
    k: int,
    tau: float,
    slack_constant: float = DEFAULT_SLACK_CONSTANT,
    full_enumeration: Optional[bool] = None,
) -> Reconstruction:
    """Find a mixture of at most k spikes on the τ-grid whose moments match *moments*.

    The moment constraints hold within slack ``slack_constant · K · τ``.
    Small instances (1/τ ≤ 32 and k ≤ 3) enumerate every support of size k
    and keep the one with the smallest largest moment deviation, preferring
    the lexicographically smallest support on ties. Larger instances solve
    the LP over the whole grid, take a vertex solution and merge the closest
    spikes until k remain; those results are flagged as heuristic.

    Args:
        moments: Estimated moments ``g_0..g_K``.
        k: Maximum number of spikes, at least 1.
        tau: Grid resolution in (0, 1].
        slack_constant: Multiplier of ``K·τ`` in the slack.
        full_enumeration: Force (True) or forbid (False) support enumeration.

    Returns:
        A :class:`Reconstruction` with at most k atoms on the grid.

    Raises:
        ReconstructionError: If the best candidate violates the slack.
    """
    if moments.kind is not FrequencyKind.MOMENTS:
        raise ContractError(f"Expected moments, got {moments.kind.value}")
    if k < 1:
        raise ContractError(f"k must be at least 1, got {k}")
    if moments.K < 1:
        raise ContractError("At least one moment beyond g_0 is needed")

    K = moments.K
    grid = moment_grid(tau)
    slack = slack_constant * max(K, 1) * tau
    powers = grid[None, :] ** np.arange(1, K + 1)[:, None]
    targets = np.asarray(moments.values[1:], dtype=float)

    if full_enumeration is None:
        full_enumeration = grid.size - 1 <= ENUMERATION_MAX_GRID and k <= ENUMERATION_MAX_SPIKES

    if full_enumeration:
        residual, support, weights = _search_supports(powers, targets, k)
        support = np.asarray(support, dtype=int)
        heuristic = False
    else:
        _, vertex = _min_residual(powers, targets)
        support = _greedy_merge(grid, vertex, k)
        residual, weights = _min_residual(powers[:, support], targets)
        heuristic = True
        warnings.warn(
            f"k-spike reconstruction used the vertex-and-merge heuristic (grid of {grid.size} points, k={k})",
            stacklevel=2,
        )

    if residual > slack * (1 + 1e-9):
        raise ReconstructionError(
            f"No {k}-spike mixture on the grid matches the moments: residual {residual:.3g} > slack {slack:.3g}",
            residual=residual,
            slack=slack,
        )

    measure = DiscreteMeasure(grid[support].reshape(-1, 1), weights).pruned(1e-15).normalized()
    logger.debug("k-spike reconstruction: support %s, residual %.3g", grid[support].tolist(), residual)
    return Reconstruction(
        measure=measure,
        residual=residual,
        slack=slack,
        heuristic=heuristic,
        details={"grid_size": int(grid.size), "candidates": math.comb(grid.size, min(k, grid.size))},
    )
