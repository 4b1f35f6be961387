"""Combining one-dimensional projections into a measure on the ε₂-net."""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..errors import ContractError, ReconstructionError
from ..lp import solve_lp
from ..measures import DiscreteMeasure, project_onto_direction, transport_distance_1d
from .net import NetPoints

logger = logging.getLogger(__name__)

DEFAULT_LP2_SLACK_CONSTANT = 4.0
MAX_SLACK_DOUBLINGS = 6


@dataclass(frozen=True, eq=False)
class DirectionEstimate:
    """Learned distribution of ⟨t, x⟩ for one direction t (basis coordinates)."""

    direction: np.ndarray
    measure: DiscreteMeasure


@dataclass(frozen=True, eq=False)
class LP2Result:
    """Measure on the net whose projections match every direction estimate.

    Attributes:
        coordinates: Learned measure in basis coordinates.
        slack: Accepted per-direction transportation slack.
        doublings: Number of slack doublings needed.
        costs: Transportation cost of the LP coupling for each direction.
    """

    coordinates: DiscreteMeasure
    slack: float
    doublings: int
    costs: np.ndarray


class _CouplingLP:
    """Sparse constraint layout shared by both LP phases.

    Variables are ordered as the coupling blocks x^t (support of ϑ̃_t × net,
    row-major), then the net weights y, then the slack columns.
    """

    def __init__(self, estimates: Sequence[DirectionEstimate], net: NetPoints) -> None:
        self.net_size = M = len(net)
        self.offsets: List[int] = []
        self.costs: List[np.ndarray] = []
        offset = 0
        for estimate in estimates:
            projections = net.points @ estimate.direction
            cost = np.abs(estimate.measure.points[:, 0][:, None] - projections[None, :])
            self.offsets.append(offset)
            self.costs.append(cost)
            offset += cost.size
        self.y_offset = offset

        rows, cols, vals, rhs = [], [], [], []
        row = 0
        for index, estimate in enumerate(estimates):
            support = estimate.measure.size
            block = self.offsets[index] + np.arange(support * M).reshape(support, M)
            # Σ_p x_pq − y_q = 0
            for q in range(M):
                rows.extend([row + q] * (support + 1))
                cols.extend(block[:, q].tolist() + [self.y_offset + q])
                vals.extend([1.0] * support + [-1.0])
            rhs.extend([0.0] * M)
            row += M
            # Σ_q x_pq = w_p
            for p in range(support):
                rows.extend([row + p] * M)
                cols.extend(block[p].tolist())
                vals.extend([1.0] * M)
            rhs.extend((estimate.measure.weights / estimate.measure.total_mass).tolist())
            row += support
        rows.extend([row] * M)
        cols.extend(range(self.y_offset, self.y_offset + M))
        vals.extend([1.0] * M)
        rhs.append(1.0)
        row += 1
        self.eq_entries = (np.array(vals), (np.array(rows), np.array(cols)))
        self.eq_rows = row
        self.b_eq = np.array(rhs)

    def solve(self, slack_columns: int, upper: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
        """Minimize the sum of slack columns; direction i uses column ``min(i, slack_columns - 1)``."""
        n_vars = self.y_offset + self.net_size + slack_columns
        A_eq = sparse.csr_array(self.eq_entries, shape=(self.eq_rows, n_vars))

        rows, cols, vals = [], [], []
        for index, cost in enumerate(self.costs):
            start = self.offsets[index]
            rows.extend([index] * (cost.size + 1))
            slack_column = self.y_offset + self.net_size + min(index, slack_columns - 1)
            cols.extend(list(range(start, start + cost.size)) + [slack_column])
            vals.extend(cost.reshape(-1).tolist() + [-1.0])
        A_ub = sparse.csr_array((vals, (rows, cols)), shape=(len(self.costs), n_vars))
        b_ub = np.zeros(len(self.costs))

        c = np.zeros(n_vars)
        c[-slack_columns:] = 1.0
        bounds = [(0, None)] * (n_vars - slack_columns) + [(0, upper)] * slack_columns
        solution = solve_lp(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=self.b_eq, bounds=bounds)
        x = solution.x
        costs = np.array(
            [cost.reshape(-1) @ x[start : start + cost.size] for start, cost in zip(self.offsets, self.costs)]
        )
        y = np.clip(x[self.y_offset : self.y_offset + self.net_size], 0.0, None)
        return y, costs


def lp2_reconstruct(
    estimates: Sequence[DirectionEstimate],
    net: NetPoints,
    epsilon2: float,
    slack_constant: float = DEFAULT_LP2_SLACK_CONSTANT,
    max_doublings: int = MAX_SLACK_DOUBLINGS,
) -> LP2Result:
    """Find a probability measure on the net whose projection along every direction is close to its estimate.

    A first LP minimizes the largest per-direction transportation cost. The
    slack is then set to ``slack_constant·ε₂·2^d`` for the smallest ``d``
    that accommodates it, and a second LP minimizes the total cost under that
    per-direction bound.

    Raises:
        ReconstructionError: If no slack up to ``2^max_doublings`` times the
            base is feasible; ``residual`` holds the per-direction costs.
    """
    if not estimates:
        raise ContractError("Need at least one direction estimate")
    if epsilon2 <= 0:
        raise ContractError(f"epsilon2 must be positive, got {epsilon2}")
    for estimate in estimates:
        if estimate.measure.dim != 1 or estimate.direction.shape[0] != net.h:
            raise ContractError("Direction estimates must be one-dimensional and match the net dimension")

    problem = _CouplingLP(estimates, net)
    _, phase_one_costs = problem.solve(slack_columns=1)
    worst = float(phase_one_costs.max())
    base = slack_constant * epsilon2
    doublings = 0 if worst <= base * (1 + 1e-9) else int(math.ceil(math.log2(worst / base) - 1e-12))
    if doublings > max_doublings:
        raise ReconstructionError(
            f"No measure on the net matches all directions: worst cost {worst:.3g} "
            f"> slack {base * 2**max_doublings:.3g}",
            residual=phase_one_costs,
            slack=base * 2**max_doublings,
        )
    if doublings:
        warnings.warn(f"Net reconstruction slack doubled {doublings} times", stacklevel=2)

    slack = base * 2**doublings
    y, costs = problem.solve(slack_columns=len(estimates), upper=max(slack, worst) * (1 + 1e-9))
    coordinates = DiscreteMeasure(net.points, y).pruned(1e-12).normalized()
    logger.debug("net reconstruction: %d atoms, slack %.3g, worst cost %.3g", coordinates.size, slack, costs.max())
    return LP2Result(coordinates=coordinates, slack=slack, doublings=doublings, costs=costs)


def audit_lp2(result: LP2Result, estimates: Sequence[DirectionEstimate]) -> np.ndarray:
    """Transportation distance between each projection of the result and its estimate."""
    return np.array(
        [
            transport_distance_1d(project_onto_direction(result.coordinates, e.direction), e.measure.normalized())
            for e in estimates
        ]
    )
