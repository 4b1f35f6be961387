"""K-snapshot samples and batches."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

import numpy as np
from scipy import sparse

from ..errors import ContractError, ValidationError
from .mixture import MixtureSpec

logger = logging.getLogger(__name__)

CHUNK_ROWS = 65_536


@dataclass(frozen=True, eq=False)
class SnapshotBatch:
    """N independent K-snapshots over the alphabet {0, ..., n-1}.

    Each row of ``counts`` is the letter count vector of one snapshot and
    sums to ``K``. Counts are kept as a sparse CSR matrix because alphabets
    grow large after isotropic splitting while every row has at most K
    non-zeros.
    """

    n: int
    K: int
    counts: sparse.csr_array
    seed: Optional[int] = None
    provenance: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1 or self.K < 0:
            raise ValidationError(f"n must be positive and K non-negative, got n={self.n}, K={self.K}")
        counts = sparse.csr_array(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[1] != self.n:
            raise ValidationError(f"Counts must have shape (N, {self.n}), got {counts.shape}")
        if counts.nnz and counts.data.min() < 0:
            raise ValidationError("Letter counts must be non-negative")
        row_sums = np.asarray(counts.sum(axis=1)).reshape(-1)
        if counts.shape[0] and np.any(row_sums != self.K):
            bad = int(np.flatnonzero(row_sums != self.K)[0])
            raise ValidationError(f"Snapshot {bad} has {row_sums[bad]} letters, expected K={self.K}")
        counts.sum_duplicates()
        counts.eliminate_zeros()
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "provenance", dict(self.provenance))

    @classmethod
    def from_dense(cls, counts: Any, K: Optional[int] = None, **kwargs: Any) -> "SnapshotBatch":
        """Build a batch from a dense ``(N, n)`` count array."""
        dense = np.atleast_2d(np.asarray(counts, dtype=np.int64))
        if K is None:
            if dense.shape[0] == 0:
                raise ValidationError("K must be given for an empty batch")
            K = int(dense[0].sum())
        return cls(n=dense.shape[1], K=K, counts=sparse.csr_array(dense), **kwargs)

    @classmethod
    def empty(cls, n: int, K: int, **kwargs: Any) -> "SnapshotBatch":
        return cls(n=n, K=K, counts=sparse.csr_array((0, n), dtype=np.int64), **kwargs)

    def __len__(self) -> int:
        return int(self.counts.shape[0])

    def to_dense(self) -> np.ndarray:
        return self.counts.toarray()

    def letter_totals(self) -> np.ndarray:
        """Total number of occurrences of each letter across the batch."""
        return np.asarray(self.counts.sum(axis=0)).reshape(-1)

    def head(self, size: int) -> "SnapshotBatch":
        """Return the first *size* snapshots."""
        return SnapshotBatch(self.n, self.K, self.counts[:size], self.seed, self.provenance)

    def occurrences(self) -> tuple:
        """Return ``(rows, letters, multiplicities)`` for every non-zero count."""
        rows = np.repeat(np.arange(len(self)), np.diff(self.counts.indptr))
        return rows, self.counts.indices.astype(np.int64), self.counts.data.astype(np.int64)


def sample_k_snapshot(p: np.ndarray, K: int, rng: np.random.Generator) -> np.ndarray:
    """Draw K i.i.d. letters from *p* and return their count vector.

    Args:
        p: Probability vector over the alphabet.
        K: Snapshot length; K=0 gives the all-zero count vector.
        rng: Source of randomness.

    Raises:
        ContractError: If K < 0 or p is not a probability vector.
    """
    if K < 0:
        raise ContractError(f"K must be non-negative, got {K}")
    p = np.asarray(p, dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
        raise ContractError("p must be a probability vector")
    if K == 0:
        return np.zeros(len(p), dtype=np.int64)
    return rng.multinomial(K, p / p.sum())


def draw_batch(spec: MixtureSpec, K: int, N: int, rng: np.random.Generator) -> SnapshotBatch:
    """Draw N K-snapshots from *spec*; each uses a fresh constituent.

    Rows are generated in chunks so memory stays bounded for large N.
    """
    if K < 0:
        raise ContractError(f"K must be non-negative, got {K}")
    if N < 0:
        raise ContractError(f"N must be non-negative, got {N}")
    if N == 0:
        return SnapshotBatch.empty(spec.n, K, seed=spec.seed)

    blocks = []
    for start in range(0, N, CHUNK_ROWS):
        size = min(CHUNK_ROWS, N - start)
        constituents = spec.sample_many(size, rng)
        blocks.append(sparse.csr_array(rng.multinomial(K, constituents)))
    counts = sparse.vstack(blocks, format="csr")
    logger.debug("drew %d %d-snapshots over %d letters", N, K, spec.n)
    return SnapshotBatch(n=spec.n, K=K, counts=counts, seed=spec.seed)


def poisson_batch_size(mean: float, rng: np.random.Generator) -> int:
    """Draw a Poissonized batch size with the given mean."""
    if mean < 0:
        raise ContractError(f"Poisson mean must be non-negative, got {mean}")
    return int(rng.poisson(mean))
