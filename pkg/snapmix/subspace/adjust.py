"""Pull learned measures back onto the simplex."""

import logging

import numpy as np
from scipy.optimize import nnls

from ..errors import ContractError, NumericalError
from ..measures import DiscreteMeasure, l1_distance_to_simplex, l1_project_to_simplex
from .basis import Basis

logger = logging.getLogger(__name__)

MAX_CUTS = 200
SPAN_TOLERANCE = 1e-8
FEASIBILITY_TOLERANCE = 1e-10


def _least_distance(G: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Solve min ‖z‖₂ subject to G z ≥ h via non-negative least squares."""
    rows, dim = G.shape
    E = np.vstack([G.T, h.reshape(1, -1)])
    f = np.zeros(dim + 1)
    f[-1] = 1.0
    u, _ = nnls(E, f)
    residual = E @ u - f
    if np.linalg.norm(residual) < 1e-14 or abs(residual[-1]) < 1e-14:
        raise NumericalError("Projection constraints are infeasible", diagnostics={"cuts": rows})
    return -residual[:dim] / residual[-1]


def _cut(coefficients: np.ndarray, totals: np.ndarray, B: np.ndarray, epsilon: float) -> tuple:
    # Σy − 1 + 2 Σ_{i ∈ S} (−y_i) ≤ ε with S the currently negative coordinates
    negative = (B @ coefficients) < 0
    row = -(totals - 2.0 * B[negative].sum(axis=0))
    return row, -(1.0 + epsilon)


def project_to_feasible_region(point: np.ndarray, basis: Basis, epsilon: float) -> np.ndarray:
    """Euclidean projection of *point* onto {y in span(B) : L1 distance from y to Δ ≤ ε}.

    The L1 distance to the simplex is max(1 − Σy, Σy − 1 + 2 Σ max(−y_i, 0)),
    a polyhedral function of the basis coordinates. Its facets are added as
    cutting planes and each relaxation is solved exactly as a least-distance
    program.
    """
    B = basis.matrix
    c0 = B.T @ point
    if l1_distance_to_simplex(B @ c0) <= epsilon + FEASIBILITY_TOLERANCE:
        return B @ c0

    totals = B.sum(axis=0)
    rows = [totals]
    rhs = [1.0 - epsilon]
    c = c0
    for _ in range(MAX_CUTS):
        row, bound = _cut(c, totals, B, epsilon)
        rows.append(row)
        rhs.append(bound)
        G = np.vstack(rows)
        h = np.array(rhs) - G @ c0
        c = c0 + _least_distance(G, h)
        if l1_distance_to_simplex(B @ c) <= epsilon + FEASIBILITY_TOLERANCE:
            return B @ c
    raise NumericalError(f"Projection did not settle after {MAX_CUTS} cutting planes")


def project_measure_to_feasible_region(measure: DiscreteMeasure, basis: Basis, epsilon: float) -> DiscreteMeasure:
    """Apply :func:`project_to_feasible_region` to every atom."""
    _check_support(measure, basis)
    projected = np.vstack([project_to_feasible_region(point, basis, epsilon) for point in measure.points])
    return DiscreteMeasure(projected, measure.weights)


def _check_support(measure: DiscreteMeasure, basis: Basis) -> None:
    if measure.dim != basis.n:
        raise ContractError(f"Measure dimension {measure.dim} does not match basis dimension {basis.n}")
    off_span = np.linalg.norm(measure.points - basis.project(measure.points), axis=1)
    if np.any(off_span > SPAN_TOLERANCE):
        raise ContractError(f"Measure support leaves span(B) by {off_span.max():.3g}")


def final_adjust(measure: DiscreteMeasure, basis: Basis, epsilon: float) -> DiscreteMeasure:
    """Map each atom to the simplex: project onto the ε-neighbourhood of Δ in span(B), then L1-project.

    Args:
        measure: Measure supported in span(B).
        basis: The reduced basis.
        epsilon: Accuracy parameter.

    Returns:
        A probability measure supported in Δ_n.

    Raises:
        ContractError: If the support is not in span(B) (tolerance 1e-8).
    """
    if not 0 < epsilon < 1:
        raise ContractError(f"epsilon must lie in (0, 1), got {epsilon}")
    projected = project_measure_to_feasible_region(measure, basis, epsilon)
    on_simplex = np.vstack([l1_project_to_simplex(point)[0] for point in projected.points])
    logger.debug("final adjustment of %d atoms", measure.size)
    return DiscreteMeasure(on_simplex, projected.weights).normalized()
