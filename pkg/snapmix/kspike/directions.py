"""Direction grids and the reduction of a projected snapshot to coin flips."""

import logging
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..coin import batch_from_heads
from ..errors import ContractError, ResourceError
from ..measures import SnapshotBatch
from ..subspace import Basis

logger = logging.getLogger(__name__)

DEFAULT_DIRECTION_CAP = 10_000


@dataclass(frozen=True, eq=False)
class DirectionGrid:
    """Directions t ∈ (1/(hR))·{−R, ..., R}^h in basis coordinates.

    The zero direction is excluded. ``subsampled`` marks grids reduced to
    the size cap by a seeded random subsample.
    """

    h: int
    R: int
    coordinates: np.ndarray
    subsampled: bool = False

    def __len__(self) -> int:
        return int(self.coordinates.shape[0])

    def lifted(self, basis: Basis) -> np.ndarray:
        """Directions as vectors of R^n (rows)."""
        return basis.lift(self.coordinates)


def build_directions(
    h: int,
    R: int,
    cap: int = DEFAULT_DIRECTION_CAP,
    rng: Optional[np.random.Generator] = None,
) -> DirectionGrid:
    """Enumerate the direction grid, excluding 0.

    Args:
        h: Basis dimension.
        R: Grid radius.
        cap: Largest number of directions allowed.
        rng: When given, grids above *cap* are subsampled instead of rejected.

    Raises:
        ResourceError: If the grid exceeds *cap* and no *rng* is given.
    """
    if h < 1 or R < 1:
        raise ContractError(f"h and R must be positive, got h={h}, R={R}")
    size = (2 * R + 1) ** h - 1
    if size > cap and rng is None:
        raise ResourceError(f"Direction grid has {size} points, above the cap of {cap}; choose a smaller R")

    axis = np.arange(-R, R + 1)
    mesh = np.stack(np.meshgrid(*([axis] * h), indexing="ij"), axis=-1).reshape(-1, h)
    mesh = mesh[np.any(mesh != 0, axis=1)]
    subsampled = False
    if size > cap:
        mesh = mesh[np.sort(rng.choice(mesh.shape[0], size=cap, replace=False))]
        subsampled = True
        warnings.warn(f"Direction grid of {size} points subsampled to {cap}", stacklevel=2)
    logger.debug("direction grid: h=%d R=%d, %d directions", h, R, mesh.shape[0])
    return DirectionGrid(h=h, R=R, coordinates=mesh / (h * R), subsampled=subsampled)


def coin_bias(direction: np.ndarray) -> np.ndarray:
    """Heads probability φ(t_ℓ) = t_ℓ/(2‖t‖∞) + ½ for every letter ℓ."""
    direction = np.asarray(direction, dtype=float)
    scale = np.max(np.abs(direction))
    if scale == 0:
        raise ContractError("The zero direction cannot be turned into a coin")
    return direction / (2.0 * scale) + 0.5


def project_snapshot_to_coin(counts: np.ndarray, direction: np.ndarray, rng: np.random.Generator) -> int:
    """Flip one coin per letter of the snapshot, with heads probability φ(t_letter); return the heads count."""
    counts = np.asarray(counts, dtype=np.int64).reshape(-1)
    return int(rng.binomial(counts, coin_bias(direction)).sum())


def coin_batch(batch: SnapshotBatch, direction: np.ndarray, rng: np.random.Generator) -> SnapshotBatch:
    """Turn a batch over [n] into a batch of K coin flips along *direction* (a vector of R^n)."""
    direction = np.asarray(direction, dtype=float).reshape(-1)
    if direction.shape[0] != batch.n:
        raise ContractError(f"Direction has length {direction.shape[0]}, batch alphabet is {batch.n}")
    bias = coin_bias(direction)
    rows, letters, multiplicity = batch.occurrences()
    flips = rng.binomial(multiplicity, bias[letters])
    heads = np.bincount(rows, weights=flips, minlength=len(batch)).astype(np.int64)
    return batch_from_heads(heads, batch.K)
