"""Reconstruction of a general mixture on [0, 1] from K-coin-flip frequencies."""

import logging
import math
import warnings
from typing import Optional

import numpy as np

from ..errors import ContractError, ReconstructionError
from ..lp import solve_lp
from ..measures import DiscreteMeasure
from ..polynomials import PiecewiseConstantBasis, build_piecewise_bernstein
from .frequency import FrequencyKind, FrequencyVector
from .result import Reconstruction

logger = logging.getLogger(__name__)

MAX_SLACK_DOUBLINGS = 6


def _check_frequencies(fq: FrequencyVector) -> None:
    if fq.kind not in (FrequencyKind.EXACT, FrequencyKind.EMPIRICAL):
        raise ContractError(f"Expected a frequency vector, got {fq.kind.value}")


def histogram_residual(basis: PiecewiseConstantBasis, measure: DiscreteMeasure, fq: FrequencyVector) -> float:
    """Largest |Σ_j b_ij z_j − fq_i| where z is the histogram of *measure* on the basis pieces."""
    pieces = basis.piece_of(measure.points[:, 0])
    histogram = np.bincount(pieces, weights=measure.weights, minlength=basis.n_pieces)
    return float(np.max(np.abs(basis.values @ histogram - fq.values)))


def reconstruct_general(
    fq: FrequencyVector,
    epsilon_prime: float,
    basis: Optional[PiecewiseConstantBasis] = None,
    max_doublings: int = MAX_SLACK_DOUBLINGS,
) -> Reconstruction:
    """Find a histogram on the pieces of a piecewise-constant Bernstein basis matching *fq*.

    The LP minimizes the largest deviation ``t`` between the histogram's
    approximate frequencies and *fq*. The result is accepted at slack
    ``ε′·2^d`` for the smallest ``d ≤ max_doublings`` with ``t ≤ ε′·2^d``.

    Args:
        fq: Exact or empirical frequency vector.
        epsilon_prime: Basis approximation error and base LP slack, in (0, 1).
        basis: Prebuilt basis for ``(fq.K, epsilon_prime)``; built when omitted.
        max_doublings: Number of slack doublings tolerated before failing.

    Returns:
        A :class:`Reconstruction` with atoms at the piece midpoints.

    Raises:
        ContractError: If ``epsilon_prime`` is outside (0, 1) or ``max_doublings`` is negative.
        ReconstructionError: If no slack up to ``ε′·2^max_doublings`` is feasible.
    """
    _check_frequencies(fq)
    if not 0 < epsilon_prime < 1:
        raise ContractError(f"epsilon_prime must be in (0, 1), got {epsilon_prime}")
    if max_doublings < 0:
        raise ContractError(f"max_doublings must be non-negative, got {max_doublings}")
    if basis is None:
        basis = build_piecewise_bernstein(fq.K, epsilon_prime)
    elif basis.K != fq.K:
        raise ContractError(f"Basis degree {basis.K} does not match K={fq.K}")

    V = basis.values
    rows, pieces = V.shape
    deviation = -np.ones((rows, 1))
    A_ub = np.vstack([np.hstack([V, deviation]), np.hstack([-V, deviation])])
    b_ub = np.concatenate([fq.values, -fq.values])
    A_eq = np.concatenate([np.ones(pieces), [0.0]]).reshape(1, -1)
    c = np.zeros(pieces + 1)
    c[-1] = 1.0

    solution = solve_lp(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=np.array([1.0]))
    z = np.clip(solution.x[:pieces], 0.0, None)
    residual = float(np.max(np.abs(V @ z - fq.values)))

    doublings = _doublings_needed(residual, epsilon_prime)
    if doublings > max_doublings:
        raise ReconstructionError(
            f"Frequencies inconsistent with any histogram: residual {residual:.3g} exceeds "
            f"slack {epsilon_prime * 2**max_doublings:.3g}",
            residual=residual,
            slack=epsilon_prime * 2**max_doublings,
        )
    if doublings:
        warnings.warn(
            f"Reconstruction needed slack {epsilon_prime * 2**doublings:.3g} (doubled {doublings} times)",
            stacklevel=2,
        )

    measure = DiscreteMeasure(basis.midpoints.reshape(-1, 1), z).pruned(1e-15).normalized()
    logger.debug("general reconstruction: %d pieces, %d atoms, residual %.3g", pieces, measure.size, residual)
    return Reconstruction(
        measure=measure,
        residual=residual,
        slack=epsilon_prime * 2**doublings,
        doublings=doublings,
        details={"n_pieces": pieces, "certified_error": basis.certified_error},
    )


def _doublings_needed(residual: float, base: float) -> int:
    if residual <= base * (1 + 1e-9):
        return 0
    return int(math.ceil(math.log2(residual / base) - 1e-12))


def reconstruct_naive(fq: FrequencyVector) -> Reconstruction:
    """Put mass fq_i on the point i/K; accurate to about 1/√K.

    Examples:
        >>> fq = FrequencyVector(K=2, values=np.array([0.25, 0.5, 0.25]), kind=FrequencyKind.EXACT)
        >>> reconstruct_naive(fq).measure.points[:, 0].tolist()
        [0.0, 0.5, 1.0]
    """
    _check_frequencies(fq)
    K = fq.K
    locations = np.arange(K + 1) / K if K else np.zeros(1)
    measure = DiscreteMeasure(locations.reshape(-1, 1), np.clip(fq.values, 0.0, None)).normalized()
    return Reconstruction(measure=measure, residual=0.0, slack=0.0, details={"method": "naive"})
