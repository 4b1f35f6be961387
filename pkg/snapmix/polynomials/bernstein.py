"""Bernstein basis polynomials B_{i,K}(x) = C(K, i) x^i (1 − x)^(K − i)."""

import math
from typing import Callable

import numpy as np
from scipy.special import gammaln, xlog1py, xlogy

from ..errors import ContractError

EXACT_BINOMIAL_LIMIT = 60


def log_binomial(K: int, i: np.ndarray) -> np.ndarray:
    """Natural log of C(K, i); exact integers for K ≤ 60, log-gamma beyond."""
    i = np.asarray(i)
    if K <= EXACT_BINOMIAL_LIMIT:
        return np.log(np.array([math.comb(K, int(j)) for j in np.ravel(i)], dtype=float)).reshape(i.shape)
    return gammaln(K + 1) - gammaln(i + 1) - gammaln(K - i + 1)


def _check_args(K: int, x: np.ndarray) -> None:
    if K < 0:
        raise ContractError(f"Degree K must be non-negative, got {K}")
    if np.any((x < 0) | (x > 1)) or not np.all(np.isfinite(x)):
        raise ContractError("Bernstein polynomials are evaluated on [0, 1]")


def bernstein_matrix(K: int, xs: np.ndarray) -> np.ndarray:
    """Evaluate all degree-K Bernstein polynomials at *xs*.

    Returns:
        Array of shape ``(len(xs), K + 1)`` with entry ``[m, i] = B_{i,K}(xs[m])``.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    _check_args(K, xs)
    i = np.arange(K + 1)
    logs = log_binomial(K, i)[None, :] + xlogy(i[None, :], xs[:, None]) + xlog1py(K - i[None, :], -xs[:, None])
    return np.exp(logs)


def bernstein_eval(i: int, K: int, x: float) -> float:
    """Return B_{i,K}(x).

    Raises:
        ContractError: If i is outside 0..K or x outside [0, 1].
    """
    if not 0 <= i <= K:
        raise ContractError(f"Index i={i} outside 0..{K}")
    return float(bernstein_matrix(K, np.array([x]))[0, i])


def bernstein_approximation(f: Callable[[np.ndarray], np.ndarray], K: int) -> Callable[[np.ndarray], np.ndarray]:
    """Return the Bernstein operator applied to *f*: x ↦ Σ_i f(i/K) B_{i,K}(x)."""
    nodes = np.asarray(f(np.arange(K + 1) / K if K else np.zeros(1)), dtype=float)

    def approximation(xs: np.ndarray) -> np.ndarray:
        return bernstein_matrix(K, xs) @ nodes

    return approximation
