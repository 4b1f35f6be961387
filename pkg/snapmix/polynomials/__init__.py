"""Polynomial bases on [0, 1]: Bernstein, shifted Chebyshev and Pascal."""

from .bernstein import bernstein_approximation, bernstein_eval, bernstein_matrix, log_binomial
from .chebyshev import (
    BasisChangeMatrix,
    chebyshev_eval,
    chebyshev_to_bernstein,
    double_factorial_bound,
    shifted_chebyshev_eval,
)
from .pascal import pascal_matrix
from .piecewise import PiecewiseConstantBasis, build_piecewise_bernstein

__all__ = [
    "BasisChangeMatrix",
    "PiecewiseConstantBasis",
    "bernstein_approximation",
    "bernstein_eval",
    "bernstein_matrix",
    "build_piecewise_bernstein",
    "chebyshev_eval",
    "chebyshev_to_bernstein",
    "double_factorial_bound",
    "log_binomial",
    "pascal_matrix",
    "shifted_chebyshev_eval",
]
