"""DiscreteMeasure: finitely supported non-negative measures on R^d."""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from ..errors import ValidationError
from ..settings import get_settings

Point = np.ndarray
PointsLike = Union[np.ndarray, Sequence[Sequence[float]], Sequence[float]]


def as_point(coords: Sequence[float]) -> Point:
    """Validate and return *coords* as a finite 1-D float array."""
    point = np.asarray(coords, dtype=float)
    if point.ndim != 1 or point.size == 0:
        raise ValidationError(f"A point must be a non-empty 1-D vector, got shape {point.shape}")
    if not np.all(np.isfinite(point)):
        raise ValidationError("Point coordinates must be finite")
    return point


def is_in_simplex(point: Point, tolerance: Optional[float] = None) -> bool:
    """Check whether *point* lies in the probability simplex within *tolerance*."""
    tol = get_settings().simplex_tolerance if tolerance is None else tolerance
    point = np.asarray(point, dtype=float)
    return bool(np.all(point >= -tol) and abs(point.sum() - 1.0) <= tol * max(1, point.size))


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """A finite weighted set of atoms in R^d.

    Atoms that coincide after rounding to ``dedup_decimals`` decimals are
    merged (their weights add up); the first occurrence keeps its exact
    coordinates. Weights are non-negative; the total mass is usually 1 but
    sub-probability measures are allowed.

    Attributes:
        points: Array of shape ``(m, d)`` with the atom locations.
        weights: Array of shape ``(m,)`` with the atom masses.
    """

    points: np.ndarray
    weights: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=float)
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2:
            raise ValidationError(f"Points must be a 2-D array, got shape {points.shape}")
        if points.shape[0] != weights.shape[0]:
            raise ValidationError(f"Got {points.shape[0]} points but {weights.shape[0]} weights")
        if points.shape[0] == 0:
            raise ValidationError("A measure needs at least one atom")
        if not np.all(np.isfinite(points)):
            raise ValidationError("Measure support contains non-finite coordinates")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise ValidationError("Measure weights must be finite and non-negative")

        points, weights = _merge_duplicates(points, weights)
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "dim", points.shape[1])

    @classmethod
    def point_mass(cls, point: Sequence[float], mass: float = 1.0) -> "DiscreteMeasure":
        """Create a single-atom measure."""
        return cls(as_point(point).reshape(1, -1), np.array([mass]))

    @classmethod
    def uniform(cls, points: PointsLike) -> "DiscreteMeasure":
        """Create the empirical measure with equal weight on each row of *points*."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        return cls(points, np.full(points.shape[0], 1.0 / points.shape[0]))

    @property
    def size(self) -> int:
        """Number of distinct atoms."""
        return int(self.weights.shape[0])

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def is_probability(self, tolerance: Optional[float] = None) -> bool:
        """Whether the total mass equals 1 within *tolerance*."""
        tol = get_settings().mass_tolerance if tolerance is None else tolerance
        return abs(self.total_mass - 1.0) <= tol

    def mean(self) -> np.ndarray:
        """Mass-weighted mean of the support (normalized by total mass)."""
        return (self.weights @ self.points) / self.total_mass

    def normalized(self) -> "DiscreteMeasure":
        """Return a copy rescaled to total mass 1."""
        total = self.total_mass
        if total <= 0:
            raise ValidationError("Cannot normalize a measure with zero mass")
        return DiscreteMeasure(self.points, self.weights / total)

    def pruned(self, threshold: float = 0.0) -> "DiscreteMeasure":
        """Drop atoms with weight at or below *threshold* (keeps the heaviest atom if all would go)."""
        keep = self.weights > threshold
        if not keep.any():
            keep[int(np.argmax(self.weights))] = True
        return DiscreteMeasure(self.points[keep], self.weights[keep])

    def integrate(self, function: Callable[[np.ndarray], np.ndarray]) -> float:
        """Return the integral of a vectorized *function* of the points."""
        values = np.asarray(function(self.points), dtype=float).reshape(-1)
        return float(self.weights @ values)

    def __repr__(self) -> str:
        return f"DiscreteMeasure(size={self.size}, dim={self.dim}, mass={self.total_mass:.6g})"


def _merge_duplicates(points: np.ndarray, weights: np.ndarray) -> tuple:
    keys = np.round(points, get_settings().dedup_decimals) + 0.0
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    merged = np.bincount(inverse, weights=weights, minlength=first.shape[0])
    return points[first].copy(), merged
