"""Pushing measures forward through maps."""

from typing import Callable, Union

import numpy as np

from ..errors import ContractError
from .measure import DiscreteMeasure

Map = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]


def push_forward(measure: DiscreteMeasure, T: Map) -> DiscreteMeasure:
    """Return T#measure, moving each atom to T(atom) and keeping its weight.

    Args:
        measure: Measure on R^d.
        T: Either a ``(d_out, d)`` matrix applied as ``x -> T @ x`` or a
            vectorized callable mapping an ``(m, d)`` array to ``(m, d_out)``.

    Returns:
        The image measure; atoms that collide are merged.
    """
    if callable(T):
        images = np.asarray(T(measure.points), dtype=float)
    else:
        matrix = np.atleast_2d(np.asarray(T, dtype=float))
        if matrix.shape[1] != measure.dim:
            raise ContractError(f"Map expects dimension {matrix.shape[1]}, measure has {measure.dim}")
        images = measure.points @ matrix.T
    if images.ndim == 1:
        images = images.reshape(-1, 1)
    if images.shape[0] != measure.size:
        raise ContractError("Map must return one image per atom")
    return DiscreteMeasure(images, measure.weights)


def project_onto_direction(measure: DiscreteMeasure, direction: np.ndarray) -> DiscreteMeasure:
    """Return the one-dimensional measure of ⟨direction, x⟩ for x ~ measure."""
    direction = np.asarray(direction, dtype=float).reshape(1, -1)
    return push_forward(measure, direction)


def hypercube_mass(measure: DiscreteMeasure, C: float, n: int) -> float:
    """Return the mass of atoms inside the hypercube [−C/n, C/n]^d (sup-norm ball)."""
    inside = np.max(np.abs(measure.points), axis=1) <= C / n + 1e-15
    return float(measure.weights[inside].sum())
