"""Upper-triangular Pascal matrix mapping normalized frequencies to moments."""

import math

import numpy as np

from ..errors import ContractError


def pascal_matrix(K: int) -> np.ndarray:
    """Return the (K+1)×(K+1) matrix with entry C(K − i, j − i) for j ≥ i, else 0.

    Multiplying a normalized frequency vector (fq_i / C(K, i)) by this matrix
    yields the moments (g_0, ..., g_K) of the mixture.

    Examples:
        >>> pascal_matrix(2).astype(int).tolist()
        [[1, 2, 1], [0, 1, 1], [0, 0, 1]]
    """
    if K < 0:
        raise ContractError(f"K must be non-negative, got {K}")
    matrix = np.zeros((K + 1, K + 1))
    for i in range(K + 1):
        for j in range(i, K + 1):
            matrix[i, j] = math.comb(K - i, j - i)
    return matrix
