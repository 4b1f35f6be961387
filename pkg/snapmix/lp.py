"""Thin wrapper around ``scipy.optimize.linprog`` (HiGHS) used by every LP in snapmix."""

from dataclasses import dataclass
from typing import Any, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import spmatrix

from snapmix.errors import NumericalError
from snapmix.settings import get_settings

Matrix = Union[np.ndarray, spmatrix, Any]
Bounds = Union[Tuple[Optional[float], Optional[float]], Sequence[Tuple[Optional[float], Optional[float]]]]

STATUS_OPTIMAL = 0
STATUS_ITERATION_LIMIT = 1
STATUS_INFEASIBLE = 2
STATUS_UNBOUNDED = 3


@dataclass(frozen=True)
class LPSolution:
    """Optimal solution of a linear program.

    ``eq_duals`` and ``ub_duals`` are the HiGHS marginals (sensitivity of the
    objective to each right-hand side); they are empty when the method does
    not report them.
    """

    x: np.ndarray
    objective: float
    status: int
    eq_duals: np.ndarray
    ub_duals: np.ndarray


def solve_lp(
    c: np.ndarray,
    A_ub: Optional[Matrix] = None,
    b_ub: Optional[np.ndarray] = None,
    A_eq: Optional[Matrix] = None,
    b_eq: Optional[np.ndarray] = None,
    bounds: Bounds = (0, None),
    method: str = "highs",
    allow_infeasible: bool = False,
) -> Optional[LPSolution]:
    """Minimize ``c @ x`` subject to the given constraints.

    Args:
        c: Objective coefficients.
        A_ub, b_ub: Inequality constraints ``A_ub @ x <= b_ub``.
        A_eq, b_eq: Equality constraints ``A_eq @ x == b_eq``.
        bounds: Variable bounds, non-negativity by default.
        method: HiGHS variant. ``"highs-ds"`` returns a basic (vertex) solution.
        allow_infeasible: Return ``None`` on infeasibility instead of raising.

    Returns:
        The optimal :class:`LPSolution`, or ``None`` if infeasible and allowed.

    Raises:
        NumericalError: If the solver fails, hits its iteration limit, reports
            an unbounded problem, or reports infeasibility when not allowed.
    """
    tolerance = get_settings().lp_tolerance
    options = {
        "primal_feasibility_tolerance": tolerance,
        "dual_feasibility_tolerance": tolerance,
    }
    result = linprog(
        c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=bounds,
        method=method,
        options=options,
    )

    if result.status == STATUS_INFEASIBLE and allow_infeasible:
        return None
    if result.status != STATUS_OPTIMAL:
        raise NumericalError(
            f"Linear program failed: {result.message}",
            status=int(result.status),
            diagnostics={"method": method, "n_variables": int(np.size(c))},
        )

    eq_duals = _marginals(result, "eqlin")
    ub_duals = _marginals(result, "ineqlin")
    return LPSolution(
        x=np.asarray(result.x, dtype=float),
        objective=float(result.fun),
        status=int(result.status),
        eq_duals=eq_duals,
        ub_duals=ub_duals,
    )


def _marginals(result: Any, name: str) -> np.ndarray:
    block = getattr(result, name, None)
    if block is None or getattr(block, "marginals", None) is None:
        return np.empty(0)
    return np.asarray(block.marginals, dtype=float)
