"""Isotropic splitting of letters.

Rare letters are eliminated and every other letter i is split into n_i
copies so that the marginal letter distribution becomes roughly uniform over
the new alphabet. Samples are mapped by replacing each occurrence of letter
i with a uniformly random copy of i.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import sparse

from ..errors import ContractError, ValidationError
from ..measures import DiscreteMeasure, SnapshotBatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class IsotropyMap:
    """Letter elimination and splitting for an alphabet of size n.

    Attributes:
        sigma: Elimination/splitting parameter.
        r_tilde: Estimated letter marginal the map was built from.
        copies: Number of copies of each letter; 0 marks an eliminated letter.
    """

    sigma: float
    r_tilde: np.ndarray
    copies: np.ndarray

    def __post_init__(self) -> None:
        copies = np.asarray(self.copies, dtype=np.int64).reshape(-1)
        if np.any(copies < 0):
            raise ValidationError("Copy counts must be non-negative")
        if copies.sum() == 0:
            raise ValidationError("Every letter was eliminated")
        object.__setattr__(self, "copies", copies)
        object.__setattr__(self, "r_tilde", np.asarray(self.r_tilde, dtype=float).reshape(-1))

    @classmethod
    def from_copies(cls, copies: np.ndarray, sigma: float = 1.0) -> "IsotropyMap":
        """Build a map directly from copy counts (used for known-marginal shortcuts and tests)."""
        copies = np.asarray(copies, dtype=np.int64).reshape(-1)
        if copies.sum() <= 0:
            raise ValidationError(f"Copy counts must include a positive entry, got {copies.tolist()}")
        return cls(sigma=sigma, r_tilde=copies / copies.sum(), copies=copies)

    @classmethod
    def identity(cls, n: int) -> "IsotropyMap":
        return cls.from_copies(np.ones(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.copies.shape[0])

    @property
    def n_prime(self) -> int:
        return int(self.copies.sum())

    @property
    def eliminated(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.copies == 0))

    @property
    def offsets(self) -> np.ndarray:
        """First new-letter index of each original letter."""
        return np.concatenate([[0], np.cumsum(self.copies)[:-1]])

    @property
    def letter_of_copy(self) -> np.ndarray:
        """Original letter of each of the n′ new letters."""
        return np.repeat(np.arange(self.n), self.copies)

    def merge_matrix(self) -> sparse.csr_array:
        """Sparse n × n′ matrix summing copies back into their original letter."""
        columns = np.arange(self.n_prime)
        return sparse.csr_array((np.ones(self.n_prime), (self.letter_of_copy, columns)), shape=(self.n, self.n_prime))

    def split_point(self, p: np.ndarray) -> np.ndarray:
        """Map a distribution on [n] to [n′], spreading p_i evenly over the copies of i."""
        p = np.asarray(p, dtype=float)
        if p.shape[-1] != self.n:
            raise ContractError(f"Expected vectors of length {self.n}")
        letters = self.letter_of_copy
        return p[..., letters] / self.copies[letters]

    def split_measure(self, measure: DiscreteMeasure) -> DiscreteMeasure:
        return DiscreteMeasure(self.split_point(measure.points), measure.weights)

    def isotropic_marginal(self, r: np.ndarray) -> np.ndarray:
        """Letter marginal after the map, renormalized over surviving letters."""
        r = np.asarray(r, dtype=float)
        kept = r * (self.copies > 0)
        return self.split_point(kept / kept.sum())


def estimate_r(batch: SnapshotBatch, sigma: float) -> np.ndarray:
    """Estimate the letter marginal r from a batch of snapshots.

    Warns when the batch is smaller than the recommended n·log(n)/σ³.

    Raises:
        ContractError: If the batch is empty.
    """
    if len(batch) == 0:
        raise ContractError("Cannot estimate the marginal from an empty batch")
    if batch.K == 0:
        raise ContractError("Cannot estimate the marginal from 0-snapshots")
    n = batch.n
    recommended = n * math.log(max(n, 2)) / sigma**3
    if len(batch) < recommended:
        warnings.warn(
            f"Marginal estimated from {len(batch)} snapshots; {math.ceil(recommended)} are recommended",
            stacklevel=2,
        )
    totals = batch.letter_totals().astype(float)
    return totals / totals.sum()


def build_isotropy_map(r_tilde: np.ndarray, n: int, sigma: float) -> IsotropyMap:
    """Eliminate letters with r̃_i ≤ 2σ/n and split the rest into ⌊n·r̃_i/σ⌋ copies.

    Examples:
        >>> build_isotropy_map(np.array([0.5, 0.5]), 2, 0.1).copies.tolist()
        [10, 10]
    """
    r_tilde = np.asarray(r_tilde, dtype=float).reshape(-1)
    if r_tilde.shape[0] != n:
        raise ContractError(f"Marginal has {r_tilde.shape[0]} entries, expected {n}")
    if not 0 < sigma < 1:
        raise ContractError(f"sigma must lie in (0, 1), got {sigma}")
    survive = r_tilde > 2 * sigma / n
    if not survive.any():
        raise ContractError(f"Every letter has marginal at most 2*sigma/n = {2 * sigma / n:.3g}")
    copies = np.where(survive, np.floor(n * r_tilde / sigma + 1e-9), 0).astype(np.int64)
    logger.debug("isotropy: %d eliminated, n'=%d", int((~survive).sum()), int(copies.sum()))
    return IsotropyMap(sigma=sigma, r_tilde=r_tilde, copies=copies)


def apply_isotropy(batch: SnapshotBatch, isotropy: IsotropyMap, rng: np.random.Generator) -> SnapshotBatch:
    """Rewrite each snapshot over the split alphabet.

    Snapshots containing an eliminated letter are dropped; the number dropped
    is recorded in ``provenance["dropped"]``.
    """
    if batch.n != isotropy.n:
        raise ContractError(f"Batch alphabet {batch.n} does not match map alphabet {isotropy.n}")

    rows, letters, multiplicity = batch.occurrences()
    bad_rows = np.unique(rows[isotropy.copies[letters] == 0])
    keep = np.ones(len(batch), dtype=bool)
    keep[bad_rows] = False
    new_index = np.cumsum(keep) - 1

    occurrence_ok = keep[rows]
    rows, letters, multiplicity = rows[occurrence_ok], letters[occurrence_ok], multiplicity[occurrence_ok]
    # one entry per letter occurrence, each sent to an independent uniform copy
    rows = np.repeat(new_index[rows], multiplicity)
    letters = np.repeat(letters, multiplicity)
    copies = isotropy.offsets[letters] + rng.integers(0, isotropy.copies[letters])

    kept = int(keep.sum())
    counts = sparse.csr_array(
        (np.ones(rows.shape[0], dtype=np.int64), (rows, copies)),
        shape=(kept, isotropy.n_prime),
    )
    provenance = dict(batch.provenance)
    provenance["dropped"] = int(len(batch) - kept)
    return SnapshotBatch(n=isotropy.n_prime, K=batch.K, counts=counts, seed=batch.seed, provenance=provenance)


def invert_isotropy(measure: DiscreteMeasure, isotropy: IsotropyMap) -> DiscreteMeasure:
    """Map a measure on [n′] back to [n] by summing the coordinates of each letter's copies."""
    if measure.dim != isotropy.n_prime:
        raise ContractError(f"Measure dimension {measure.dim} does not match n'={isotropy.n_prime}")
    merged = (isotropy.merge_matrix() @ measure.points.T).T
    return DiscreteMeasure(np.asarray(merged), measure.weights)
