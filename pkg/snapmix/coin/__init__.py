"""Learning mixtures of coins from K-coin-flip samples."""

from .frequency import (
    FrequencyKind,
    FrequencyVector,
    batch_from_heads,
    empirical_fq,
    exact_fq,
    exact_moments,
    fq_to_moments,
    normalize_fq,
)
from .general import histogram_residual, reconstruct_general, reconstruct_naive
from .kspike import moment_grid, reconstruct_kspike_1d
from .result import Reconstruction

__all__ = [
    "FrequencyKind",
    "FrequencyVector",
    "Reconstruction",
    "batch_from_heads",
    "empirical_fq",
    "exact_fq",
    "exact_moments",
    "fq_to_moments",
    "histogram_residual",
    "moment_grid",
    "normalize_fq",
    "reconstruct_general",
    "reconstruct_kspike_1d",
    "reconstruct_naive",
]
