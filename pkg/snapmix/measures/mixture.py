"""Ground-truth mixture descriptions and sampling of constituents."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..errors import ContractError, ValidationError
from ..settings import get_settings
from .measure import DiscreteMeasure, Point, is_in_simplex


class MixtureKind(Enum):
    """Shapes of ground-truth mixtures the harness can draw from."""

    KSPIKE = "kspike-simplex"
    KSPIKE_UNIT_INTERVAL = "kspike-unit-interval"
    CONTINUOUS_SEGMENT = "continuous-segment"
    CONTINUOUS_SUBSPACE = "continuous-subspace"


class Density(Enum):
    """Density of a continuous mixture over the convex hull of its vertices."""

    UNIFORM = "uniform"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True, eq=False)
class MixtureSpec:
    """A ground-truth mixture ϑ over the simplex Δ_n.

    Spike kinds carry ``spike_points`` (``k`` rows in Δ_n) and
    ``spike_weights``. Continuous kinds carry ``vertices`` and draw a point as
    a barycentric combination with Dirichlet weights (all ones for the
    uniform density).

    For the unit-interval kind ``n`` is 2 and each spike is the coin
    ``(1 - x, x)``: letter 1 is "heads".
    """

    kind: MixtureKind
    n: int
    k: int
    spike_points: Optional[np.ndarray] = None
    spike_weights: Optional[np.ndarray] = None
    vertices: Optional[np.ndarray] = None
    density: Density = Density.UNIFORM
    dirichlet_alpha: Optional[np.ndarray] = None
    seed: Optional[int] = field(default=None)

    def __post_init__(self) -> None:
        kind = MixtureKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "density", Density(self.density))
        if self.n < 1 or self.k < 1:
            raise ValidationError(f"n and k must be positive, got n={self.n}, k={self.k}")

        if kind in (MixtureKind.KSPIKE, MixtureKind.KSPIKE_UNIT_INTERVAL):
            self._validate_spikes(kind)
        else:
            self._validate_vertices(kind)

    def _validate_spikes(self, kind: MixtureKind) -> None:
        if self.spike_points is None or self.spike_weights is None:
            raise ValidationError(f"{kind.value} mixtures need spike_points and spike_weights")
        points = np.atleast_2d(np.asarray(self.spike_points, dtype=float))
        weights = np.asarray(self.spike_weights, dtype=float).reshape(-1)
        if kind is MixtureKind.KSPIKE_UNIT_INTERVAL and self.n != 2:
            raise ValidationError("Unit-interval mixtures live on a two-letter alphabet (n=2)")
        if points.shape != (self.k, self.n):
            raise ValidationError(f"Expected {self.k} spikes of dimension {self.n}, got shape {points.shape}")
        if weights.shape[0] != self.k or np.any(weights < 0):
            raise ValidationError("Spike weights must be k non-negative numbers")
        if abs(weights.sum() - 1.0) > get_settings().mass_tolerance:
            raise ValidationError(f"Spike weights must sum to 1, got {weights.sum():.12g}")
        for point in points:
            if not is_in_simplex(point):
                raise ValidationError(f"Spike {point.tolist()} is not in the simplex")
        object.__setattr__(self, "spike_points", points)
        object.__setattr__(self, "spike_weights", weights)

    def _validate_vertices(self, kind: MixtureKind) -> None:
        if self.vertices is None:
            raise ValidationError(f"{kind.value} mixtures need vertices")
        vertices = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if vertices.shape[1] != self.n:
            raise ValidationError(f"Vertices must have dimension {self.n}, got {vertices.shape[1]}")
        if kind is MixtureKind.CONTINUOUS_SEGMENT and vertices.shape[0] != 2:
            raise ValidationError("A segment mixture needs exactly two endpoints")
        for vertex in vertices:
            if not is_in_simplex(vertex):
                raise ValidationError(f"Vertex {vertex.tolist()} is not in the simplex")
        alpha = self.dirichlet_alpha
        if self.density is Density.UNIFORM:
            alpha = np.ones(vertices.shape[0])
        elif alpha is None:
            raise ValidationError("A Dirichlet density needs dirichlet_alpha")
        alpha = np.asarray(alpha, dtype=float).reshape(-1)
        if alpha.shape[0] != vertices.shape[0] or np.any(alpha <= 0):
            raise ValidationError("dirichlet_alpha needs one positive entry per vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "dirichlet_alpha", alpha)

    @classmethod
    def coin(cls, heads: Sequence[float], weights: Sequence[float], seed: Optional[int] = None) -> "MixtureSpec":
        """Build a unit-interval spike mixture from heads probabilities."""
        heads = np.asarray(heads, dtype=float).reshape(-1)
        points = np.column_stack([1.0 - heads, heads])
        return cls(
            kind=MixtureKind.KSPIKE_UNIT_INTERVAL,
            n=2,
            k=heads.shape[0],
            spike_points=points,
            spike_weights=np.asarray(weights, dtype=float),
            seed=seed,
        )

    @property
    def is_discrete(self) -> bool:
        return self.kind in (MixtureKind.KSPIKE, MixtureKind.KSPIKE_UNIT_INTERVAL)

    def to_measure(self) -> DiscreteMeasure:
        """Return the ground truth as a measure on Δ_n (spike kinds only)."""
        if not self.is_discrete:
            raise ContractError("Continuous mixtures have no exact discrete form; use discretize()")
        return DiscreteMeasure(self.spike_points, self.spike_weights)

    def heads_measure(self) -> DiscreteMeasure:
        """Return a two-letter mixture as a measure on [0, 1] over the heads probability."""
        if self.n != 2:
            raise ContractError("heads_measure() only applies to two-letter mixtures")
        if self.is_discrete:
            return DiscreteMeasure(self.spike_points[:, 1:], self.spike_weights)
        raise ContractError("Continuous mixtures have no exact discrete form; use discretize()")

    def discretize(self, n_points: int, rng: np.random.Generator) -> DiscreteMeasure:
        """Return a discrete proxy: the exact measure for spikes, else an n_points empirical sample."""
        if self.is_discrete:
            return self.to_measure()
        points = np.vstack([sample_constituent(self, rng) for _ in range(n_points)])
        return DiscreteMeasure.uniform(points)

    def sample_many(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Draw *count* constituents at once as a ``(count, n)`` array."""
        if self.is_discrete:
            index = rng.choice(self.k, size=count, p=self.spike_weights)
            return self.spike_points[index]
        lambdas = rng.dirichlet(self.dirichlet_alpha, size=count)
        points = lambdas @ self.vertices
        return _clip_to_simplex(points)


def sample_constituent(spec: MixtureSpec, rng: np.random.Generator) -> Point:
    """Draw one constituent p ~ ϑ; the result lies in Δ_n.

    Args:
        spec: The mixture to draw from.
        rng: Source of randomness.

    Returns:
        A probability vector of length ``spec.n``.

    Examples:
        >>> from snapmix.rng import make_rng
        >>> spec = MixtureSpec.coin([0.3], [1.0])
        >>> sample_constituent(spec, make_rng(0)).tolist()
        [0.7, 0.3]
    """
    return spec.sample_many(1, rng)[0]


def _clip_to_simplex(points: np.ndarray) -> np.ndarray:
    # barycentric combinations can drift by a few ulps
    points = np.clip(points, 0.0, None)
    return points / points.sum(axis=1, keepdims=True)
