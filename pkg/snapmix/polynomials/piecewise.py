"""Piecewise-constant approximation of the Bernstein basis."""

from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.optimize import brentq

from ..errors import ContractError
from .bernstein import bernstein_eval, bernstein_matrix


@dataclass(frozen=True)
class PiecewiseConstantBasis:
    """Shared partition of [0, 1] with per-piece values for every B_{i,K}.

    ``values[i, j]`` is the value used for ``B_{i,K}`` on piece ``j``
    (``[breakpoints[j], breakpoints[j + 1]]``). ``certified_error`` is the
    largest deviation of any approximant from its polynomial, which never
    exceeds ``epsilon_prime``.
    """

    K: int
    epsilon_prime: float
    breakpoints: np.ndarray
    values: np.ndarray
    certified_error: float

    @property
    def n_pieces(self) -> int:
        return int(self.breakpoints.shape[0] - 1)

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.breakpoints[:-1] + self.breakpoints[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def piece_of(self, x: np.ndarray) -> np.ndarray:
        """Index of the piece containing each x (the last piece is closed on the right)."""
        index = np.searchsorted(self.breakpoints, np.asarray(x, dtype=float), side="right") - 1
        return np.clip(index, 0, self.n_pieces - 1)


def _monotone_breaks(i: int, K: int, lo: float, hi: float, step: float) -> List[float]:
    # levels equally spaced in value on a side where B_{i,K} is monotone
    v_lo, v_hi = bernstein_eval(i, K, lo), bernstein_eval(i, K, hi)
    rise = abs(v_hi - v_lo)
    if hi <= lo or rise <= step:
        return []
    pieces = int(np.ceil(rise / step))
    breaks = []
    for s in range(1, pieces):
        level = v_lo + (v_hi - v_lo) * s / pieces
        breaks.append(brentq(lambda x: bernstein_eval(i, K, x) - level, lo, hi, xtol=1e-14))
    return breaks


def build_piecewise_bernstein(K: int, epsilon_prime: float) -> PiecewiseConstantBasis:
    """Partition [0, 1] so that every B_{i,K} is within ε′ of a constant on each piece.

    Every mode i/K is a breakpoint, so each B_{i,K} is monotone on every
    piece. On each monotone side the breakpoints are chosen at equally spaced
    values (spacing at most 2ε′); the piece value is the mean of the two
    endpoint values, which bounds the error by ε′.

    Args:
        K: Degree, at least 0.
        epsilon_prime: Target uniform error in (0, 1).

    Returns:
        The shared partition and the approximating values.
    """
    if K < 0:
        raise ContractError(f"K must be non-negative, got {K}")
    if not 0 < epsilon_prime < 1:
        raise ContractError(f"epsilon_prime must lie in (0, 1), got {epsilon_prime}")

    step = 2.0 * epsilon_prime
    breaks = {0.0, 1.0}
    if K > 0:
        breaks.update(i / K for i in range(K + 1))
        for i in range(K + 1):
            mode = i / K
            breaks.update(_monotone_breaks(i, K, 0.0, mode, step))
            breaks.update(_monotone_breaks(i, K, mode, 1.0, step))

    breakpoints = np.array(sorted(breaks))
    at_breaks = bernstein_matrix(K, breakpoints).T
    values = 0.5 * (at_breaks[:, :-1] + at_breaks[:, 1:])
    certified = float(np.max(np.abs(at_breaks[:, 1:] - at_breaks[:, :-1])) / 2.0) if breakpoints.size > 1 else 0.0
    return PiecewiseConstantBasis(
        K=K,
        epsilon_prime=epsilon_prime,
        breakpoints=breakpoints,
        values=values,
        certified_error=certified,
    )
