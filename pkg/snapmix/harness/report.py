"""Run reports."""

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

import numpy as np

from .config import ExperimentConfig


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy scalars, arrays and tuples into plain JSON types."""
    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


@dataclass(frozen=True, eq=False)
class RunReport:
    """Outcome of one pipeline run.

    Attributes:
        config: The configuration the run used.
        timings: Wall time of each stage in seconds.
        diagnostics: Stage-specific numbers (basis checks, LP slacks, dropped snapshots, ...).
        tran1: L1 transportation distance to the ground truth, when known.
        tran2: L2 transportation distance to the ground truth, when known.
        trivial_tran1: L1 distance of the single-point baseline δ_r̃, when known.
        recommended_budgets: Asymptotic budgets for the configuration, for comparison only.
        outputs: Paths of files written by the run.
    """

    config: ExperimentConfig
    timings: Dict[str, float] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    tran1: Optional[float] = None
    tran2: Optional[float] = None
    trivial_tran1: Optional[float] = None
    recommended_budgets: Dict[str, float] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "diagnostics", to_jsonable(self.diagnostics))
