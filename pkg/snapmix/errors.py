"""Exception hierarchy for snapmix.

Every error raised on purpose by the library derives from :class:`SnapmixError`.
Input and precondition errors also derive from ``ValueError`` so callers that
only care about "bad input" can keep catching that.
"""

from typing import Any, Dict, Optional

import numpy as np


class SnapmixError(Exception):
    """Base exception for snapmix errors."""

    pass


class ValidationError(SnapmixError, ValueError):
    """Raised when a domain object is malformed (non-finite points, off-simplex spikes, bad counts)."""

    pass


class ContractError(SnapmixError, ValueError):
    """Raised when an operation is called outside its preconditions."""

    pass


class NumericalError(SnapmixError):
    """Raised when a solver fails for reasons other than a documented infeasibility."""

    def __init__(self, message: str, status: Optional[int] = None, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.status = status
        self.diagnostics = dict(diagnostics or {})


class ReconstructionError(SnapmixError):
    """Raised when a reconstruction LP stays infeasible after every slack doubling."""

    def __init__(self, message: str, residual: Any = None, slack: Optional[float] = None):
        super().__init__(message)
        self.residual = residual
        self.slack = slack


class DegenerateInputError(SnapmixError):
    """Raised for rank-0 matrices or spectra with nothing above the truncation threshold."""

    pass


class PropertyViolationError(SnapmixError):
    """Raised when a basis fails one of its norm properties; carries the offending vector."""

    def __init__(self, property_name: str, witness: np.ndarray, ratio: float):
        super().__init__(f"Basis property '{property_name}' violated (bound ratio {ratio:.6g})")
        self.property_name = property_name
        self.witness = witness
        self.ratio = ratio


class ResourceError(SnapmixError):
    """Raised when a grid or net would exceed its configured size cap."""

    pass


class StageError(SnapmixError):
    """Raised by pipelines to label which stage failed. The original error is chained."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"Stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
