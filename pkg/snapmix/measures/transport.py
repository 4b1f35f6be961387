"""Transportation (earthmover) distance between discrete measures."""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np
from scipy import sparse
from scipy.spatial.distance import cdist

from ..errors import ContractError, ValidationError
from ..lp import solve_lp
from ..settings import get_settings
from .measure import DiscreteMeasure


class Metric(Enum):
    """Ground metric for transportation distances."""

    L1 = "l1"
    L2 = "l2"

    @property
    def scipy_name(self) -> str:
        return "cityblock" if self is Metric.L1 else "euclidean"


MetricLike = Union[Metric, str]


@dataclass(frozen=True)
class TransportResult:
    """Optimal coupling of two measures with its LP dual certificate.

    ``coupling[i, j]`` is the mass moved from ``P.points[i]`` to
    ``Q.points[j]``. The dual potentials satisfy ``f[i] + g[j] <= cost[i, j]``
    and ``f @ P.weights + g @ Q.weights == value`` at optimality.
    """

    value: float
    coupling: np.ndarray
    f: np.ndarray
    g: np.ndarray


def _check_pair(P: DiscreteMeasure, Q: DiscreteMeasure) -> None:
    if P.dim != Q.dim:
        raise ContractError(f"Measures live in different dimensions ({P.dim} vs {Q.dim})")
    tolerance = get_settings().mass_tolerance
    if abs(P.total_mass - Q.total_mass) > tolerance:
        raise ContractError(f"Total masses differ: {P.total_mass:.12g} vs {Q.total_mass:.12g}")
    limit = get_settings().max_transport_support
    if P.size > limit or Q.size > limit:
        raise ContractError(f"Support size above {limit}; compress the measures first")


def transport_plan(P: DiscreteMeasure, Q: DiscreteMeasure, metric: MetricLike = Metric.L1) -> TransportResult:
    """Solve the transportation LP between *P* and *Q*.

    Args:
        P: Source measure.
        Q: Target measure with the same dimension and total mass.
        metric: Ground metric, ``"l1"`` or ``"l2"``.

    Returns:
        The optimal value, coupling and dual potentials.

    Raises:
        ContractError: On dimension or mass mismatch, or oversized supports.
    """
    _check_pair(P, Q)
    metric = Metric(metric)
    m, l = P.size, Q.size
    cost = cdist(P.points, Q.points, metric=metric.scipy_name)
    p = P.weights
    q = Q.weights * (P.total_mass / Q.total_mass) if Q.total_mass > 0 else Q.weights

    # x is the row-major flattening of the m x l coupling
    row_sums = sparse.kron(sparse.eye(m), np.ones((1, l)), format="csr")
    col_sums = sparse.kron(np.ones((1, m)), sparse.eye(l), format="csr")
    A_eq = sparse.vstack([row_sums, col_sums], format="csr")
    b_eq = np.concatenate([p, q])

    solution = solve_lp(cost.reshape(-1), A_eq=A_eq, b_eq=b_eq, bounds=(0, None))
    duals = solution.eq_duals
    if duals.size != m + l:
        duals = np.zeros(m + l)
    return TransportResult(
        value=max(solution.objective, 0.0),
        coupling=solution.x.reshape(m, l),
        f=duals[:m],
        g=duals[m:],
    )


def transport_distance(P: DiscreteMeasure, Q: DiscreteMeasure, metric: MetricLike = Metric.L1) -> float:
    """Return the transportation distance between *P* and *Q* under *metric*.

    Examples:
        >>> P = DiscreteMeasure.point_mass([1.0, 0.0])
        >>> Q = DiscreteMeasure.point_mass([0.0, 1.0])
        >>> transport_distance(P, Q, "l1")
        2.0
    """
    return transport_plan(P, Q, metric).value


def transport_distance_1d(P: DiscreteMeasure, Q: DiscreteMeasure) -> float:
    """Closed-form distance on the line: the integral of |F_P - F_Q|."""
    if P.dim != 1 or Q.dim != 1:
        raise ContractError("transport_distance_1d needs one-dimensional measures")
    if abs(P.total_mass - Q.total_mass) > get_settings().mass_tolerance:
        raise ContractError(f"Total masses differ: {P.total_mass:.12g} vs {Q.total_mass:.12g}")
    xs = np.concatenate([P.points[:, 0], Q.points[:, 0]])
    signed = np.concatenate([P.weights, -Q.weights])
    order = np.argsort(xs, kind="stable")
    xs, signed = xs[order], signed[order]
    cdf_gap = np.cumsum(signed)[:-1]
    return float(np.sum(np.abs(cdf_gap) * np.diff(xs)))


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """Continuous piecewise-linear function on the line, constant outside its breakpoints."""

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        breakpoints = np.asarray(self.breakpoints, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if breakpoints.shape != values.shape or breakpoints.ndim != 1 or breakpoints.size == 0:
            raise ValidationError("Breakpoints and values must be matching non-empty 1-D arrays")
        if np.any(np.diff(breakpoints) <= 0):
            raise ValidationError("Breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 2:
            x = x[:, 0]
        return np.interp(x, self.breakpoints, self.values)

    @property
    def lipschitz_constant(self) -> float:
        if self.breakpoints.size < 2:
            return 0.0
        return float(np.max(np.abs(np.diff(self.values) / np.diff(self.breakpoints))))


def dual_certificate_check(
    P: DiscreteMeasure,
    Q: DiscreteMeasure,
    f: Callable[[np.ndarray], np.ndarray],
    metric: MetricLike = Metric.L1,
) -> float:
    """Return ∫f dP − ∫f dQ after checking that *f* is 1-Lipschitz on the joint support.

    By duality the returned value is a lower bound on ``transport_distance(P, Q)``.

    Raises:
        ContractError: If *f* violates the Lipschitz bound between two support points.
    """
    if P.dim != Q.dim:
        raise ContractError(f"Measures live in different dimensions ({P.dim} vs {Q.dim})")
    support = np.vstack([P.points, Q.points])
    values = np.asarray(f(support), dtype=float).reshape(-1)
    distances = cdist(support, support, metric=Metric(metric).scipy_name)
    gaps = np.abs(values[:, None] - values[None, :])
    if np.any(gaps > distances + 1e-12):
        raise ContractError("Witness function is not 1-Lipschitz on the joint support")
    return P.integrate(f) - Q.integrate(f)
