"""ε-nets of Euclidean balls in the reduced coordinates."""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError, ResourceError

logger = logging.getLogger(__name__)

DEFAULT_NET_CAP = 200_000


@dataclass(frozen=True, eq=False)
class NetPoints:
    """Points of the ball of radius ``radius`` in R^h, every ball point within ``epsilon2`` of one of them."""

    points: np.ndarray
    radius: float
    epsilon2: float
    spacing: float

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def h(self) -> int:
        return int(self.points.shape[1])


def build_net(h: int, radius: float, epsilon2: float, cap: int = DEFAULT_NET_CAP) -> NetPoints:
    """Build an ε₂-net of the radius-L ball in R^h.

    Grid points of spacing 2ε₂/√h cover R^h within ε₂. Those within L + ε₂
    of the origin are radially projected onto the ball, which keeps the
    covering radius while placing every point inside the ball.

    Raises:
        ResourceError: If the net would have more than *cap* points.

    Examples:
        >>> build_net(1, 0.1, 0.05).points[:, 0].round(12).tolist()
        [-0.1, 0.0, 0.1]
    """
    if h < 1 or radius < 0 or epsilon2 <= 0:
        raise ContractError(f"Need h >= 1, radius >= 0 and epsilon2 > 0; got h={h}, radius={radius}")
    spacing = 2.0 * epsilon2 / np.sqrt(h)
    steps = int(np.floor((radius + epsilon2) / spacing + 1e-12))
    estimate = (2 * steps + 1) ** h
    if estimate > cap:
        raise ResourceError(f"Net would have about {estimate} points, above the cap of {cap}")

    axis = spacing * np.arange(-steps, steps + 1)
    grid = np.stack(np.meshgrid(*([axis] * h), indexing="ij"), axis=-1).reshape(-1, h)
    norms = np.linalg.norm(grid, axis=1)
    grid = grid[norms <= radius + epsilon2 + 1e-12]
    norms = np.linalg.norm(grid, axis=1)
    outside = norms > radius
    grid[outside] *= (radius / norms[outside])[:, None]
    points = np.unique(np.round(grid, 12) + 0.0, axis=0)
    logger.debug("net: h=%d radius=%.4g spacing=%.4g, %d points", h, radius, spacing, points.shape[0])
    return NetPoints(points=points, radius=radius, epsilon2=epsilon2, spacing=spacing)
