"""Orthonormal bases of the reduced subspace and their norm guarantees."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from scipy.linalg import eigh

from ..errors import ContractError, DegenerateInputError, PropertyViolationError
from ..lp import solve_lp
from .ellipsoid import john_ellipsoid

logger = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-9
RESIDUAL_TOLERANCE = 1e-6

PROPERTY_SUP_NORM = "unit-sup-norm"
PROPERTY_L1_SPHERE = "l1-sphere-norm"
PROPERTY_PROJECTION = "projection-norm"
PROPERTY_RESIDUAL = "polytope-residual"


@dataclass(frozen=True, eq=False)
class Basis:
    """Orthonormal columns b_1..b_h spanning the reduced subspace of R^n.

    Attributes:
        matrix: ``(n, h)`` array with orthonormal columns.
        L: Proven scale bound: unit vectors of the span have sup-norm at most L.
        C: Hypercube constant the basis was built with.
        epsilon: Accuracy parameter the basis was built with.
        k: Number of mixture constituents.
        span: Orthonormal basis of span(A′) the polytope lives in.
        axis_lengths: Semi-axis lengths of the scaled ellipsoid for the kept columns.
        dropped_lengths: Semi-axis lengths of the axes that were dropped.
    """

    matrix: np.ndarray
    L: float
    C: Optional[float] = None
    epsilon: Optional[float] = None
    k: Optional[int] = None
    span: Optional[np.ndarray] = None
    axis_lengths: np.ndarray = field(default_factory=lambda: np.empty(0))
    dropped_lengths: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self) -> None:
        matrix = np.atleast_2d(np.asarray(self.matrix, dtype=float))
        if matrix.shape[0] == 1 and matrix.shape[1] > 1:
            matrix = matrix.T
        object.__setattr__(self, "matrix", matrix)
        if self.L <= 0:
            raise ContractError(f"L must be positive, got {self.L}")

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def h(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def L_tight(self) -> float:
        """Exact sup-norm bound max_i ‖row_i‖₂ for unit vectors of the span."""
        return float(np.max(np.linalg.norm(self.matrix, axis=1)))

    @property
    def polytope_bound(self) -> Optional[float]:
        return None if self.C is None else self.C / self.n

    def coordinates(self, points: np.ndarray) -> np.ndarray:
        """Coordinates Bᵀx of each row of *points*."""
        return np.asarray(points, dtype=float) @ self.matrix

    def lift(self, coordinates: np.ndarray) -> np.ndarray:
        """Points B·c for each row of *coordinates*."""
        return np.asarray(coordinates, dtype=float) @ self.matrix.T

    def project(self, points: np.ndarray) -> np.ndarray:
        return self.lift(self.coordinates(points))


def orthonormal_span(A: np.ndarray, relative_threshold: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (columns) of the range of a symmetric PSD matrix."""
    values, vectors = eigh(0.5 * (A + A.T))
    if values.max() <= 0:
        raise DegenerateInputError("Matrix has no positive eigenvalue")
    keep = values > relative_threshold * values.max()
    return vectors[:, keep][:, ::-1]


def build_basis(
    A_prime: np.ndarray,
    C: float,
    epsilon: float,
    n: int,
    k: int,
    span: Optional[np.ndarray] = None,
) -> Basis:
    """Build the reduced basis from the truncated second moment A′.

    The polytope P = [−C/n, C/n]^n ∩ span(A′) gets its maximum-volume
    inscribed ellipsoid E. The axes of √k·E with length at least ε/√n become
    the basis columns.

    Args:
        A_prime: Truncated second-moment matrix of shape ``(n, n)``.
        C: Hypercube constant.
        epsilon: Accuracy parameter in (0, 1).
        n: Alphabet size (after isotropy).
        k: Number of mixture constituents.
        span: Precomputed orthonormal basis of span(A′).

    Returns:
        The :class:`Basis` with its scale bound.

    Raises:
        DegenerateInputError: If A′ is zero or every axis is too short.
    """
    if C <= 0 or not 0 < epsilon < 1 or k < 1:
        raise ContractError(f"Need C > 0, epsilon in (0, 1) and k >= 1; got C={C}, epsilon={epsilon}, k={k}")
    A_prime = np.asarray(A_prime, dtype=float)
    if A_prime.shape != (n, n):
        raise ContractError(f"A' must have shape ({n}, {n}), got {A_prime.shape}")
    U = orthonormal_span(A_prime) if span is None else np.asarray(span, dtype=float)

    ellipsoid = john_ellipsoid(U, C / n)
    lengths = np.sqrt(k) * ellipsoid.lengths
    keep = lengths >= epsilon / np.sqrt(n)
    if not keep.any():
        raise DegenerateInputError(
            f"Every ellipsoid axis is shorter than {epsilon / np.sqrt(n):.3g}; longest is {lengths.max():.3g}"
        )

    matrix = U @ ellipsoid.axes[:, keep]
    L = C * np.sqrt(k) / (n * lengths[keep].min())
    logger.debug("basis: kept %d of %d axes, L=%.4g", int(keep.sum()), keep.size, L)
    return Basis(
        matrix=matrix,
        L=float(L),
        C=C,
        epsilon=epsilon,
        k=k,
        span=U,
        axis_lengths=lengths[keep],
        dropped_lengths=lengths[~keep],
    )


@dataclass(frozen=True)
class BasisReport:
    """Outcome of :func:`verify_basis`.

    ``ratios`` maps each property to its worst observed value/bound ratio;
    values up to 1 (plus tolerance) pass. ``witnesses`` holds the vector that
    attained each worst ratio.
    """

    ratios: Dict[str, float]
    witnesses: Dict[str, np.ndarray]
    samples: int

    @property
    def passed(self) -> bool:
        return all(ratio <= 1.0 + _tolerance(name) for name, ratio in self.ratios.items())


def _tolerance(name: str) -> float:
    return RESIDUAL_TOLERANCE if name == PROPERTY_RESIDUAL else RELATIVE_TOLERANCE


def _worst(values: np.ndarray, vectors: np.ndarray) -> tuple:
    index = int(np.argmax(values))
    return float(values[index]), vectors[index]


def _polytope_points(basis: Basis, samples: int, rng: np.random.Generator) -> np.ndarray:
    # vertices of P in random directions, shrunk by random factors to reach the interior
    U = basis.span
    bound = basis.polytope_bound
    r = U.shape[1]
    A_ub = np.vstack([U, -U])
    b_ub = np.full(2 * U.shape[0], bound)
    points = []
    for _ in range(samples):
        direction = rng.standard_normal(r)
        vertex = solve_lp(-direction, A_ub=A_ub, b_ub=b_ub, bounds=(None, None)).x
        points.append(rng.uniform(0.0, 1.0) * (U @ vertex))
        points.append(U @ vertex)
    return np.array(points)


def verify_basis(
    basis: Basis,
    samples: int,
    rng: np.random.Generator,
    raise_on_violation: bool = True,
) -> BasisReport:
    """Check the norm properties of *basis* on random and worst-case vectors.

    The properties are, with L the basis scale bound:

    - unit vectors v of the span have ‖v‖∞ ≤ L;
    - vectors v of the span with ‖v‖₁ = 1 have 1/√n ≤ ‖v‖₂ ≤ L;
    - ‖Π_B x‖₂ ≤ L whenever ‖x‖₁ = 1;
    - points w of the polytope satisfy ‖w − Π_B w‖₂ ≤ ε/√n (checked when
      the basis carries its polytope).

    Raises:
        PropertyViolationError: With the offending vector, if a property fails
            and *raise_on_violation* is set.
    """
    if samples < 1:
        raise ContractError("Need at least one sample")
    B, n, L = basis.matrix, basis.n, basis.L
    ratios: Dict[str, float] = {}
    witnesses: Dict[str, np.ndarray] = {}

    # worst unit vector for the sup-norm points along the heaviest row of B
    heaviest = B[int(np.argmax(np.linalg.norm(B, axis=1)))]
    coefficients = np.vstack([rng.standard_normal((samples, basis.h)), heaviest])
    span_vectors = coefficients @ B.T
    unit = span_vectors / np.linalg.norm(span_vectors, axis=1, keepdims=True)
    ratios[PROPERTY_SUP_NORM], witnesses[PROPERTY_SUP_NORM] = _worst(np.max(np.abs(unit), axis=1) / L, unit)

    l1_unit = span_vectors / np.abs(span_vectors).sum(axis=1, keepdims=True)
    l2 = np.linalg.norm(l1_unit, axis=1)
    ratios[PROPERTY_L1_SPHERE], witnesses[PROPERTY_L1_SPHERE] = _worst(
        np.maximum(l2 / L, (1.0 / np.sqrt(n)) / l2), l1_unit
    )

    signs = rng.choice([-1.0, 1.0], size=(samples, n))
    simplex_like = signs * rng.dirichlet(np.ones(n), size=samples)
    l1_sphere = np.vstack([simplex_like, np.eye(n)])
    projected = l1_sphere @ B @ B.T
    ratios[PROPERTY_PROJECTION], witnesses[PROPERTY_PROJECTION] = _worst(
        np.linalg.norm(projected, axis=1) / L, l1_sphere
    )

    if basis.span is not None and basis.C is not None and basis.epsilon is not None:
        points = _polytope_points(basis, samples, rng)
        residual = np.linalg.norm(points - points @ B @ B.T, axis=1)
        ratios[PROPERTY_RESIDUAL], witnesses[PROPERTY_RESIDUAL] = _worst(
            residual / (basis.epsilon / np.sqrt(n)), points
        )

    report = BasisReport(ratios=ratios, witnesses=witnesses, samples=samples)
    if raise_on_violation:
        for name, ratio in ratios.items():
            if ratio > 1.0 + _tolerance(name):
                raise PropertyViolationError(name, witnesses[name], ratio)
    return report
