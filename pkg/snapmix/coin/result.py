"""Result type shared by the coin reconstructions."""

from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from ..measures import DiscreteMeasure


@dataclass(frozen=True)
class Reconstruction:
    """A reconstructed mixture on [0, 1] and how well it matches its input.

    Attributes:
        measure: The reconstructed measure on [0, 1].
        residual: Largest absolute constraint violation of the returned measure.
        slack: Slack of the feasibility LP that accepted it.
        doublings: Number of times the slack was doubled before acceptance.
        heuristic: True when the result came from a heuristic rather than an exact search.
        details: Extra, method-specific diagnostics.
    """

    measure: DiscreteMeasure
    residual: float
    slack: float
    doublings: int = 0
    heuristic: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def support(self) -> np.ndarray:
        return self.measure.points[:, 0]
