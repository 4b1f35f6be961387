"""Shifted Chebyshev polynomials on [0, 1] and their Bernstein coefficients."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

from ..errors import ContractError

MAX_EXACT_DEGREE = 30


def chebyshev_eval(i: int, x: np.ndarray) -> np.ndarray:
    """Evaluate the Chebyshev polynomial T_i on [−1, 1] by the three-term recurrence."""
    if i < 0:
        raise ContractError(f"Chebyshev index must be non-negative, got {i}")
    x = np.asarray(x, dtype=float)
    previous, current = np.ones_like(x), x.copy()
    if i == 0:
        return previous
    for _ in range(i - 1):
        previous, current = current, 2.0 * x * current - previous
    return current


def shifted_chebyshev_eval(i: int, x: np.ndarray) -> np.ndarray:
    """Evaluate T*_i(x) = T_i(2x − 1) for x in [0, 1]."""
    return chebyshev_eval(i, 2.0 * np.asarray(x, dtype=float) - 1.0)


def _shifted_monomial_coefficients(K: int) -> List[List[int]]:
    # integer power-basis coefficients of T*_0 .. T*_K
    polys = [[1], [-1, 2]]
    for _ in range(2, K + 1):
        prev, cur = polys[-2], polys[-1]
        nxt = [0] * (len(cur) + 1)
        for power, coef in enumerate(cur):
            nxt[power] -= 2 * coef
            nxt[power + 1] += 4 * coef
        for power, coef in enumerate(prev):
            nxt[power] -= coef
        polys.append(nxt)
    return polys[: K + 1]


@dataclass(frozen=True)
class BasisChangeMatrix:
    """Coefficients of T*_0..T*_K in the degree-K Bernstein basis.

    Column ``j`` holds the Bernstein coefficients of ``T*_j``, so a
    Chebyshev coefficient vector ``t`` maps to ``matrix @ t``.
    """

    K: int
    matrix: np.ndarray

    def apply(self, chebyshev_coefficients: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(chebyshev_coefficients, dtype=float)

    @property
    def max_column_sum(self) -> float:
        return float(np.abs(self.matrix).sum(axis=0).max())


def chebyshev_to_bernstein(K: int) -> BasisChangeMatrix:
    """Build the exact Chebyshev-to-Bernstein change of basis for degree K.

    Coefficients are computed in rational arithmetic and rounded once.

    Raises:
        ContractError: If K is negative or above 30.
    """
    if not 0 <= K <= MAX_EXACT_DEGREE:
        raise ContractError(f"Basis change supported for 0 <= K <= {MAX_EXACT_DEGREE}, got {K}")

    matrix = np.zeros((K + 1, K + 1))
    for j, monomial in enumerate(_shifted_monomial_coefficients(K)):
        for i in range(K + 1):
            # x^m = Σ_{i ≥ m} C(i, m) / C(K, m) B_{i,K}
            value = sum(
                (Fraction(coef * math.comb(i, m), math.comb(K, m)) for m, coef in enumerate(monomial) if m <= i),
                Fraction(0),
            )
            matrix[i, j] = float(value)
    return BasisChangeMatrix(K=K, matrix=matrix)


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def double_factorial_bound(K: int) -> np.ndarray:
    """Return the entrywise magnitude bound (2K−1)!! / ((2i−1)!! (2K−2i−1)!!) for i = 0..K."""
    if not 0 <= K <= MAX_EXACT_DEGREE:
        raise ContractError(f"Bound supported for 0 <= K <= {MAX_EXACT_DEGREE}, got {K}")
    top = _double_factorial(2 * K - 1)
    return np.array(
        [top / (_double_factorial(2 * i - 1) * _double_factorial(2 * K - 2 * i - 1)) for i in range(K + 1)]
    )
