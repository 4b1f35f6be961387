"""Frequency vectors of K-coin-flip samples and their moment transform."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ContractError, ValidationError
from ..measures import DiscreteMeasure, SnapshotBatch
from ..polynomials import bernstein_matrix, pascal_matrix
from ..settings import get_settings

HEADS = 1


class FrequencyKind(Enum):
    """What a :class:`FrequencyVector` holds."""

    EXACT = "exact"
    EMPIRICAL = "empirical"
    NORMALIZED = "normalized"
    MOMENTS = "moments"


@dataclass(frozen=True, eq=False)
class FrequencyVector:
    """A length-(K+1) vector indexed by the number of heads i = 0..K.

    ``EXACT`` and ``EMPIRICAL`` vectors are probability vectors. ``MOMENTS``
    vectors satisfy 1 = g_0 ≥ g_1 ≥ ... ≥ g_K ≥ 0 unless built with
    ``strict=False`` (noisy or externally supplied estimates).
    """

    K: int
    values: np.ndarray
    kind: FrequencyKind
    strict: bool = True

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float).reshape(-1)
        kind = FrequencyKind(self.kind)
        if self.K < 0 or values.shape[0] != self.K + 1:
            raise ValidationError(f"Expected {self.K + 1} entries for K={self.K}, got {values.shape[0]}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("Frequency entries must be finite")
        tol = get_settings().mass_tolerance
        if kind in (FrequencyKind.EXACT, FrequencyKind.EMPIRICAL):
            if np.any(values < -tol) or np.any(values > 1 + tol) or abs(values.sum() - 1.0) > tol:
                raise ValidationError("Frequencies must be a probability vector")
        elif kind is FrequencyKind.MOMENTS and self.strict and not _is_moment_sequence(values, tol):
            raise ValidationError("Moments must satisfy 1 = g_0 >= g_1 >= ... >= g_K >= 0")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "kind", kind)

    @classmethod
    def raw_moments(cls, values: np.ndarray) -> "FrequencyVector":
        """Wrap a moment estimate without checking monotonicity."""
        values = np.asarray(values, dtype=float)
        return cls(K=values.shape[0] - 1, values=values, kind=FrequencyKind.MOMENTS, strict=False)

    def is_monotone(self) -> bool:
        return _is_moment_sequence(self.values, get_settings().mass_tolerance)


def _is_moment_sequence(values: np.ndarray, tol: float) -> bool:
    return bool(
        abs(values[0] - 1.0) <= tol and np.all(np.diff(values) <= tol) and values[-1] >= -tol
    )


def empirical_fq(batch: SnapshotBatch, K: int) -> FrequencyVector:
    """Histogram of the number of heads over a batch of two-letter K-snapshots.

    Raises:
        ContractError: If the batch is empty, not over two letters, or of another length.
    """
    if batch.n != 2:
        raise ContractError(f"Coin batches use a two-letter alphabet, got n={batch.n}")
    if batch.K != K:
        raise ContractError(f"Batch has K={batch.K}, expected K={K}")
    if len(batch) == 0:
        raise ContractError("Cannot estimate frequencies from an empty batch")
    heads = np.asarray(batch.counts @ (np.arange(2) == HEADS).astype(np.int64)).reshape(-1)
    fq = np.bincount(heads, minlength=K + 1) / len(batch)
    return FrequencyVector(K=K, values=fq, kind=FrequencyKind.EMPIRICAL)


def exact_fq(measure: DiscreteMeasure, K: int) -> FrequencyVector:
    """Exact frequencies fq_i = ∫ B_{i,K} dϑ for a measure on [0, 1]."""
    if measure.dim != 1:
        raise ContractError("exact_fq needs a measure on [0, 1]")
    fq = measure.weights @ bernstein_matrix(K, measure.points[:, 0])
    return FrequencyVector(K=K, values=fq / measure.total_mass, kind=FrequencyKind.EXACT)


def exact_moments(measure: DiscreteMeasure, K: int) -> FrequencyVector:
    """Exact moments g_i = ∫ x^i dϑ for i = 0..K."""
    if measure.dim != 1:
        raise ContractError("exact_moments needs a measure on [0, 1]")
    powers = measure.points[:, 0][:, None] ** np.arange(K + 1)[None, :]
    return FrequencyVector(K=K, values=measure.weights @ powers / measure.total_mass, kind=FrequencyKind.MOMENTS)


def normalize_fq(fq: FrequencyVector) -> FrequencyVector:
    """Divide each entry by C(K, i)."""
    binomials = np.array([math.comb(fq.K, i) for i in range(fq.K + 1)], dtype=float)
    return FrequencyVector(K=fq.K, values=fq.values / binomials, kind=FrequencyKind.NORMALIZED)


def fq_to_moments(fq: FrequencyVector) -> FrequencyVector:
    """Map frequencies to moments: g = Pascal · (fq_i / C(K, i)).

    Examples:
        >>> fq = FrequencyVector(K=1, values=np.array([0.5, 0.5]), kind=FrequencyKind.EXACT)
        >>> fq_to_moments(fq).values.tolist()
        [1.0, 0.5]
    """
    if fq.kind not in (FrequencyKind.EXACT, FrequencyKind.EMPIRICAL):
        raise ContractError(f"fq_to_moments expects frequencies, got {fq.kind.value}")
    moments = pascal_matrix(fq.K) @ normalize_fq(fq).values
    return FrequencyVector(K=fq.K, values=moments, kind=FrequencyKind.MOMENTS, strict=False)


def batch_from_heads(heads: np.ndarray, K: int) -> SnapshotBatch:
    """Build a two-letter batch from per-snapshot heads counts."""
    heads = np.asarray(heads, dtype=np.int64).reshape(-1)
    if np.any(heads < 0) or np.any(heads > K):
        raise ValidationError(f"Heads counts must lie in 0..{K}")
    return SnapshotBatch.from_dense(np.column_stack([K - heads, heads]), K=K)
