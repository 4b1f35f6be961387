"""Projections onto the probability simplex."""

from typing import Tuple

import numpy as np

from ..errors import ContractError


def l1_distance_to_simplex(y: np.ndarray) -> float:
    """Return min over x in Δ of ‖x − y‖₁ in closed form.

    With ``s = Σ y`` and ``ν = Σ max(−y_i, 0)`` the distance is
    ``max(1 − s, s − 1 + 2ν)``.
    """
    y = np.asarray(y, dtype=float)
    total = float(y.sum())
    negative = float(np.clip(-y, 0.0, None).sum())
    return max(1.0 - total, total - 1.0 + 2.0 * negative)


def l1_project_to_simplex(y: np.ndarray) -> Tuple[np.ndarray, float]:
    """Return an L1-nearest point of the simplex to *y* and the distance.

    Negative coordinates are raised to zero. Excess mass is then removed from
    coordinates in decreasing-value order (lower index first on ties), and a
    mass deficit is added to the largest coordinate. Both choices attain the
    minimum distance, so the output is deterministic and optimal.

    Args:
        y: Finite vector.

    Returns:
        A tuple ``(x, distance)`` with ``x`` in the simplex.

    Examples:
        >>> x, d = l1_project_to_simplex(np.array([0.6, 0.6, 0.0]))
        >>> x.round(12).tolist(), round(d, 12)
        ([0.4, 0.6, 0.0], 0.2)
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 1 or y.size == 0 or not np.all(np.isfinite(y)):
        raise ContractError("l1_project_to_simplex needs a finite non-empty vector")

    x = np.clip(y, 0.0, None)
    positive_mass = float(x.sum())
    if positive_mass > 1.0:
        excess = positive_mass - 1.0
        for index in np.lexsort((np.arange(x.size), -x)):
            take = min(x[index], excess)
            x[index] -= take
            excess -= take
            if excess <= 0.0:
                break
    elif positive_mass < 1.0:
        x[int(np.argmax(x))] += 1.0 - positive_mass

    distance = float(np.abs(x - y).sum())
    return x, distance


def clamp_renormalize(y: np.ndarray) -> np.ndarray:
    """Clamp negative coordinates to zero and rescale to sum 1 (uniform if nothing is left)."""
    y = np.clip(np.asarray(y, dtype=float), 0.0, None)
    total = y.sum()
    if total <= 0:
        return np.full(y.shape, 1.0 / y.size)
    return y / total
