"""Maximum-volume ellipsoids inscribed in symmetric polytopes.

The polytope {y : |a_iᵀ y| ≤ 1 for all i} is the polar of conv{±a_i}. The
minimum-volume enclosing ellipsoid of the ±a_i is found with Khachiyan's
algorithm; its polar is the maximum-volume inscribed ellipsoid.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import eigh, solve

from ..errors import ContractError, NumericalError
from ..settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ellipsoid:
    """Centred ellipsoid {y : yᵀ shape⁻¹ y ≤ 1}.

    Attributes:
        shape: Symmetric positive definite matrix.
        axes: Unit axis directions as columns, longest first.
        lengths: Semi-axis lengths matching ``axes``.
    """

    shape: np.ndarray
    axes: np.ndarray
    lengths: np.ndarray

    @classmethod
    def from_shape(cls, shape: np.ndarray) -> "Ellipsoid":
        values, vectors = eigh(shape)
        order = np.argsort(values)[::-1]
        return cls(shape=shape, axes=vectors[:, order], lengths=np.sqrt(np.clip(values[order], 0.0, None)))

    def gauge(self, y: np.ndarray) -> np.ndarray:
        """Return yᵀ shape⁻¹ y for each row of *y* (≤ 1 inside the ellipsoid)."""
        y = np.atleast_2d(y)
        return np.einsum("ij,ij->i", y, solve(self.shape, y.T, assume_a="pos").T)


def enclosing_symmetric_ellipsoid(
    points: np.ndarray,
    tolerance: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Khachiyan's algorithm for the minimum-volume centred ellipsoid around ±points.

    Args:
        points: Array of shape ``(m, d)`` spanning R^d.
        tolerance: Stop when max_i a_iᵀ X⁻¹ a_i ≤ d (1 + tolerance).
        max_iterations: Iteration cap.

    Returns:
        ``(X, leverages)`` where X = Σ u_i a_i a_iᵀ and leverages are a_iᵀ X⁻¹ a_i.
        The enclosing ellipsoid is {z : zᵀ X⁻¹ z ≤ max(leverages)}.
    """
    settings = get_settings()
    tolerance = settings.mvee_tolerance if tolerance is None else tolerance
    max_iterations = settings.mvee_max_iterations if max_iterations is None else max_iterations

    points = np.asarray(points, dtype=float)
    m, d = points.shape
    if np.linalg.matrix_rank(points) < d:
        raise ContractError("Polytope constraints do not span the space; the polytope is unbounded")

    u = np.full(m, 1.0 / m)
    top = np.inf
    for iteration in range(max_iterations):
        X = (points.T * u) @ points
        leverages = np.einsum("ij,ij->i", points, solve(X, points.T, assume_a="pos").T)
        j = int(np.argmax(leverages))
        top = leverages[j]
        if top <= d * (1.0 + tolerance):
            logger.debug("MVEE converged after %d iterations", iteration)
            return X, leverages

        # away step: move weight off the supported point with the smallest leverage
        active = np.flatnonzero(u > 0)
        i = int(active[np.argmin(leverages[active])])
        low = leverages[i]
        if d - low > top - d and u[i] < 1.0:
            drop = u[i] / (1.0 - u[i])
            if low > 1.0:
                drop = min((d - low) / (d * (low - 1.0)), drop)
            dropped = drop == u[i] / (1.0 - u[i])
            u *= 1.0 + drop
            u[i] -= drop
            if dropped:
                u[i] = 0.0
        else:
            step = (top - d) / (d * (top - 1.0))
            u *= 1.0 - step
            u[j] += step
        np.clip(u, 0.0, None, out=u)
        u /= u.sum()
    raise NumericalError(
        f"Ellipsoid iteration did not converge in {max_iterations} steps",
        diagnostics={"gap": float(top / d - 1.0)},
    )


def john_ellipsoid(constraints: np.ndarray, bound: float) -> Ellipsoid:
    """Maximum-volume ellipsoid inside {y : |c_iᵀ y| ≤ bound for every row c_i}.

    The result is shrunk by the final optimality gap so it lies inside the
    polytope exactly.

    Examples:
        >>> E = john_ellipsoid(np.eye(2), 1.0)
        >>> np.round(E.lengths, 6).tolist()
        [1.0, 1.0]
    """
    if bound <= 0:
        raise ContractError(f"bound must be positive, got {bound}")
    scaled = np.asarray(constraints, dtype=float) / bound
    X, leverages = enclosing_symmetric_ellipsoid(scaled)
    # polar of {z : zᵀ X⁻¹ z ≤ M} is {y : yᵀ (M X) y ≤ 1}
    shape = np.linalg.inv(X) / float(np.max(leverages))
    return Ellipsoid.from_shape(0.5 * (shape + shape.T))
