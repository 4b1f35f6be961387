"""The full dimension reduction: isotropy, second moment, truncation and basis."""

import logging
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from ..errors import ContractError
from ..measures import SnapshotBatch
from ..rng import split
from ..stages import stage
from .basis import Basis, BasisReport, build_basis, verify_basis
from .isotropy import IsotropyMap, apply_isotropy, build_isotropy_map, estimate_r
from .second_moment import SpectralCut, estimate_A, spectral_truncate

logger = logging.getLogger(__name__)

DEFAULT_BASIS_SAMPLES = 200


@dataclass(frozen=True, eq=False)
class Reduction:
    """A reduced basis over the isotropic alphabet and what produced it.

    ``A`` is the second moment over the isotropic alphabet before truncation
    and ``batch2`` the 2-snapshot batch after isotropic splitting.
    """

    isotropy: IsotropyMap
    basis: Basis
    A: np.ndarray
    cut: SpectralCut
    report: BasisReport
    batch2: SnapshotBatch


def known_second_moment(A: np.ndarray, isotropy: IsotropyMap) -> np.ndarray:
    """Carry a second moment over the original alphabet to the isotropic one."""
    A = np.asarray(A, dtype=float)
    if A.shape != (isotropy.n, isotropy.n):
        raise ContractError(f"A must have shape ({isotropy.n}, {isotropy.n}), got {A.shape}")
    return isotropy.split_point(isotropy.split_point(A).T).T


def reduce_dimension(
    batch1: SnapshotBatch,
    batch2: SnapshotBatch,
    k: int,
    epsilon: float,
    sigma: float,
    C: float,
    rng: np.random.Generator,
    known_A: Optional[np.ndarray] = None,
    poissonize: bool = False,
    basis_samples: int = DEFAULT_BASIS_SAMPLES,
    timings: Optional[Dict[str, float]] = None,
) -> Reduction:
    """Find the reduced basis from 1- and 2-snapshots.

    Stages, each timed into *timings* and labelled on failure: ``isotropy``
    (letter elimination and splitting), ``second-moment`` (estimate of A and
    its spectral truncation) and ``basis`` (ellipsoid basis and its
    property check).

    Args:
        batch1: 1-snapshots for the letter marginal.
        batch2: 2-snapshots for the second moment.
        k: Number of mixture constituents.
        epsilon: Accuracy parameter in (0, 1).
        sigma: Isotropy parameter, below epsilon/4.
        C: Hypercube constant.
        rng: Source of randomness.
        known_A: Exact second moment over the original alphabet; skips estimation.
        poissonize: Poissonize the 2-snapshot count.
        basis_samples: Random vectors per property in the basis check.
        timings: Dict receiving stage wall times.

    Raises:
        StageError: Wrapping the failure of a stage.
    """
    if batch2.n != batch1.n:
        raise ContractError("All batches must share the same alphabet")
    timings = {} if timings is None else timings
    split_rng, second_rng, basis_rng = split(rng, 3)
    n = batch1.n

    with stage("isotropy", timings):
        isotropy = build_isotropy_map(estimate_r(batch1, sigma), n, sigma)
        batch2_iso = apply_isotropy(batch2, isotropy, split_rng)

    with stage("second-moment", timings):
        if known_A is not None:
            A = known_second_moment(known_A, isotropy)
        else:
            A = estimate_A(batch2_iso, poissonize=poissonize, rng=second_rng)
        cut = spectral_truncate(A, k, epsilon, isotropy.n_prime)

    with stage("basis", timings):
        basis = build_basis(cut.matrix, C, epsilon, isotropy.n_prime, k, span=cut.span)
        report = verify_basis(basis, basis_samples, basis_rng)

    logger.info("reduced %d letters to %d isotropic letters and %d basis vectors", n, isotropy.n_prime, basis.h)
    return Reduction(isotropy=isotropy, basis=basis, A=A, cut=cut, report=report, batch2=batch2_iso)
