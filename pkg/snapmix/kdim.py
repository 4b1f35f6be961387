"""Learning a mixture supported near a low-dimensional subspace.

Every K-snapshot is projected to the reduced basis: the average of the
basis rows of its letters is an unbiased estimate of the projection of its
constituent. The empirical measure of these projections is the learned
mixture.
"""

import logging

import numpy as np

from .errors import ContractError
from .measures import DiscreteMeasure, SnapshotBatch, push_forward
from .subspace import Basis

logger = logging.getLogger(__name__)


def project_snapshot(counts: np.ndarray, basis: Basis) -> np.ndarray:
    """Return μ̃(s) = (1/K) Σ_ℓ b′_{s_ℓ}, the basis coordinates of one snapshot.

    Args:
        counts: Letter count vector of length n.
        basis: Reduced basis over the same alphabet.

    Examples:
        >>> basis = Basis(matrix=np.array([[1.0], [0.0]]), L=1.0)
        >>> project_snapshot(np.array([1, 1]), basis).tolist()
        [0.5]
    """
    counts = np.asarray(counts, dtype=float).reshape(-1)
    if counts.shape[0] != basis.n:
        raise ContractError(f"Snapshot alphabet {counts.shape[0]} does not match basis dimension {basis.n}")
    total = counts.sum()
    if total <= 0:
        raise ContractError("Snapshot has no letters")
    return (counts @ basis.matrix) / total


def learn_kdim_coordinates(batch: SnapshotBatch, basis: Basis) -> DiscreteMeasure:
    """Empirical measure of the snapshot projections, in basis coordinates (R^h)."""
    if batch.n != basis.n:
        raise ContractError(f"Batch alphabet {batch.n} does not match basis dimension {basis.n}")
    if len(batch) == 0:
        raise ContractError("Cannot learn from an empty batch")
    if batch.K == 0:
        raise ContractError("Cannot project 0-snapshots")
    coordinates = np.asarray(batch.counts @ basis.matrix) / batch.K
    logger.debug("projected %d snapshots onto %d basis vectors", len(batch), basis.h)
    return DiscreteMeasure.uniform(coordinates)


def learn_kdim(batch: SnapshotBatch, basis: Basis) -> DiscreteMeasure:
    """Learn the projected mixture as a measure on span(B) inside R^n.

    Args:
        batch: K-snapshots over the (isotropic) alphabet of the basis.
        basis: Reduced basis.

    Returns:
        The uniform measure on the lifted projections B·μ̃(s).
    """
    return push_forward(learn_kdim_coordinates(batch, basis), basis.matrix)
