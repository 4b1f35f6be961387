"""Second-moment matrix of the mixture and its spectral truncation."""

import logging
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import eigh

from ..errors import ContractError, DegenerateInputError
from ..measures import Density, MixtureSpec, SnapshotBatch
from ..measures.snapshots import poisson_batch_size

logger = logging.getLogger(__name__)


def estimate_A(
    batch: SnapshotBatch,
    poissonize: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """Estimate A = E[p pᵀ] from 2-snapshots.

    A snapshot with letters i ≠ j adds half a count to (i, j) and to (j, i);
    a snapshot with a repeated letter adds a full count to (i, i). With
    *poissonize* the number of snapshots used is drawn from Poisson(N) and
    capped at N.

    Raises:
        ContractError: If the batch is empty or not made of 2-snapshots.
    """
    if batch.K != 2:
        raise ContractError(f"The second-moment estimate needs 2-snapshots, got K={batch.K}")
    if poissonize:
        if rng is None:
            raise ContractError("Poissonized estimation needs a random generator")
        batch = batch.head(min(poisson_batch_size(len(batch), rng), len(batch)))
    if len(batch) == 0:
        raise ContractError("Cannot estimate the second moment from an empty batch")

    counts = batch.counts.astype(float)
    gram = (counts.T @ counts).toarray()
    gram -= np.diag(batch.letter_totals().astype(float))
    return gram / (2.0 * len(batch))


def exact_A(spec: MixtureSpec) -> np.ndarray:
    """Exact A = E[p pᵀ] for a ground-truth mixture.

    Spike mixtures give Σ_j w_j α_j α_jᵀ. Continuous mixtures draw
    barycentric weights λ ~ Dirichlet(α) over their vertices V, so
    A = Vᵀ E[λ λᵀ] V with E[λ λᵀ] = (diag(α) + α αᵀ) / (α₀ (α₀ + 1)).
    """
    if spec.is_discrete:
        return (spec.spike_points.T * spec.spike_weights) @ spec.spike_points
    if spec.density not in (Density.UNIFORM, Density.DIRICHLET):
        raise ContractError(f"No closed-form second moment for density {spec.density}")
    alpha = spec.dirichlet_alpha
    total = alpha.sum()
    second = (np.diag(alpha) + np.outer(alpha, alpha)) / (total * (total + 1.0))
    return spec.vertices.T @ second @ spec.vertices


@dataclass(frozen=True)
class SpectralCut:
    """Result of truncating a second-moment estimate.

    Attributes:
        matrix: The truncated matrix A′ (top ``cut`` eigenpairs).
        cut: Number of kept eigenpairs.
        eigenvalues: All eigenvalues of the input, in decreasing order.
        eigenvectors: Matching eigenvectors as columns.
        gamma: Threshold ε²/(k·n).
    """

    matrix: np.ndarray
    cut: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    gamma: float

    @property
    def span(self) -> np.ndarray:
        """Orthonormal basis of span(A′) as columns."""
        return self.eigenvectors[:, : self.cut]


def spectral_truncate(A: np.ndarray, k: int, epsilon: float, n: int) -> SpectralCut:
    """Keep the top eigenpairs of *A* above a spectral gap.

    With γ = ε²/(k·n), let k′ be the number of eigenvalues ≥ γ. The cut is
    the largest j ≤ min(k′, k) with λ_j − λ_{j+1} ≥ γ/k. If no position has
    such a gap the cut falls back to min(k′, k) with a warning.

    Raises:
        DegenerateInputError: If no eigenvalue reaches γ.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ContractError(f"A must be square, got shape {A.shape}")
    if k < 1 or not 0 < epsilon < 1:
        raise ContractError(f"Need k >= 1 and epsilon in (0, 1), got k={k}, epsilon={epsilon}")

    values, vectors = eigh(0.5 * (A + A.T))
    values, vectors = values[::-1], vectors[:, ::-1]
    gamma = epsilon**2 / (k * n)
    above = int(np.sum(values >= gamma))
    if above == 0:
        raise DegenerateInputError(f"No eigenvalue reaches the threshold {gamma:.3g}; the top one is {values[0]:.3g}")

    limit = min(above, k)
    padded = np.append(values, 0.0)
    cuts = [j for j in range(1, limit + 1) if padded[j - 1] - padded[j] >= gamma / k]
    if cuts:
        cut = cuts[-1]
    else:
        cut = limit
        warnings.warn(f"No spectral gap of {gamma / k:.3g} found; keeping {cut} eigenpairs", stacklevel=2)

    kept = np.clip(values[:cut], 0.0, None)
    matrix = (vectors[:, :cut] * kept) @ vectors[:, :cut].T
    logger.debug("spectral cut %d of %d (gamma=%.3g)", cut, A.shape[0], gamma)
    return SpectralCut(matrix=matrix, cut=cut, eigenvalues=values, eigenvectors=vectors, gamma=gamma)
