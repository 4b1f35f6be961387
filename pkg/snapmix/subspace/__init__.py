"""Dimension reduction: isotropy, second moments, ellipsoid bases and simplex adjustment."""

from .adjust import final_adjust, project_measure_to_feasible_region, project_to_feasible_region
from .basis import Basis, BasisReport, build_basis, orthonormal_span, verify_basis
from .ellipsoid import Ellipsoid, enclosing_symmetric_ellipsoid, john_ellipsoid
from .isotropy import IsotropyMap, apply_isotropy, build_isotropy_map, estimate_r, invert_isotropy
from .reduction import Reduction, known_second_moment, reduce_dimension
from .second_moment import SpectralCut, estimate_A, exact_A, spectral_truncate

__all__ = [
    "Basis",
    "BasisReport",
    "Ellipsoid",
    "IsotropyMap",
    "Reduction",
    "SpectralCut",
    "apply_isotropy",
    "build_basis",
    "build_isotropy_map",
    "enclosing_symmetric_ellipsoid",
    "estimate_A",
    "estimate_r",
    "exact_A",
    "final_adjust",
    "invert_isotropy",
    "john_ellipsoid",
    "known_second_moment",
    "orthonormal_span",
    "project_measure_to_feasible_region",
    "project_to_feasible_region",
    "reduce_dimension",
    "spectral_truncate",
    "verify_basis",
]
