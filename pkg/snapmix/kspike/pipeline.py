"""End-to-end learning of a k-spike mixture over a large alphabet."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..coin import (
    FrequencyVector,
    Reconstruction,
    empirical_fq,
    exact_moments,
    fq_to_moments,
    reconstruct_kspike_1d,
)
from ..coin.kspike import DEFAULT_SLACK_CONSTANT
from ..errors import ContractError
from ..measures import DiscreteMeasure, SnapshotBatch, push_forward
from ..rng import split
from ..stages import stage
from ..subspace import Basis, IsotropyMap, apply_isotropy, final_adjust, invert_isotropy, reduce_dimension
from .directions import DEFAULT_DIRECTION_CAP, build_directions, coin_batch
from .lp2 import DEFAULT_LP2_SLACK_CONSTANT, DirectionEstimate, audit_lp2, lp2_reconstruct
from .net import DEFAULT_NET_CAP, build_net

logger = logging.getLogger(__name__)

NET_RADIUS_DIVISIONS = 10


@dataclass(frozen=True)
class KSpikeConfig:
    """Parameters of the k-spike learner.

    ``C`` defaults to 3k/ε and ``epsilon2`` to a tenth of the net radius.
    ``coin_K`` is the snapshot length of the direction batch and defaults to
    2k − 1.
    """

    k: int
    epsilon: float
    sigma: float
    tau: float = 1.0 / 16
    R: int = 4
    C: Optional[float] = None
    epsilon2: Optional[float] = None
    coin_K: Optional[int] = None
    slack_constant: float = DEFAULT_SLACK_CONSTANT
    lp2_slack_constant: float = DEFAULT_LP2_SLACK_CONSTANT
    full_enumeration: Optional[bool] = None
    direction_cap: int = DEFAULT_DIRECTION_CAP
    subsample_directions: bool = False
    net_cap: int = DEFAULT_NET_CAP
    basis_samples: int = 200
    poissonize: bool = False

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ContractError(f"k must be at least 1, got {self.k}")
        if not 0 < self.epsilon < 1:
            raise ContractError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.sigma < self.epsilon / 4:
            raise ContractError(f"sigma must lie in (0, epsilon/4), got {self.sigma}")
        if not 0 < self.tau <= 1 or self.R < 1:
            raise ContractError(f"Need tau in (0, 1] and R >= 1, got tau={self.tau}, R={self.R}")

    @property
    def hypercube_constant(self) -> float:
        return self.C if self.C is not None else 3.0 * self.k / self.epsilon

    @property
    def direction_K(self) -> int:
        return self.coin_K if self.coin_K is not None else 2 * self.k - 1


@dataclass(frozen=True, eq=False)
class KSpikeDiagnostics:
    """Per-stage numbers recorded by :func:`learn_kspike`."""

    n_prime: int
    eliminated: List[int]
    dropped: Dict[str, int]
    spectral_cut: int
    top_eigenvalues: List[float]
    h: int
    L: float
    L_tight: float
    basis_ratios: Dict[str, float]
    n_directions: int
    directions_subsampled: bool
    direction_batch_reused: bool
    heuristic_directions: int
    max_direction_residual: float
    net_size: int
    lp2_slack: float
    lp2_doublings: int
    lp2_audit_max: float
    timings: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass(frozen=True, eq=False)
class KSpikeResult:
    """Learned mixture on Δ_n with the intermediate objects that produced it."""

    measure: DiscreteMeasure
    reduced: DiscreteMeasure
    basis: Basis
    isotropy: IsotropyMap
    diagnostics: KSpikeDiagnostics


def reconstruct_direction(moments: FrequencyVector, config: KSpikeConfig) -> Reconstruction:
    """Reconstruct the coin mixture of one direction from its moments."""
    return reconstruct_kspike_1d(
        moments,
        config.k,
        config.tau,
        slack_constant=config.slack_constant,
        full_enumeration=config.full_enumeration,
    )


def _to_projection(reconstruction: Reconstruction, scale: float) -> DiscreteMeasure:
    # heads probability x maps back to ⟨t, p⟩ = (x − ½)·2‖t‖∞
    return push_forward(reconstruction.measure, lambda x: (x - 0.5) * scale)


def learn_direction(
    batch: SnapshotBatch,
    direction: np.ndarray,
    basis: Basis,
    config: KSpikeConfig,
    rng: np.random.Generator,
) -> Tuple[DirectionEstimate, Reconstruction]:
    """Learn the distribution of ⟨t, p⟩ for one direction t (basis coordinates).

    Returns:
        ``(DirectionEstimate, Reconstruction)``.
    """
    lifted = basis.lift(direction)
    scale = 2.0 * float(np.max(np.abs(lifted)))
    coins = coin_batch(batch, lifted, rng)
    moments = fq_to_moments(empirical_fq(coins, batch.K))
    reconstruction = reconstruct_direction(moments, config)
    estimate = DirectionEstimate(
        direction=np.asarray(direction, dtype=float),
        measure=_to_projection(reconstruction, scale),
    )
    return estimate, reconstruction


def learn_direction_exact(
    reduced_truth: DiscreteMeasure,
    direction: np.ndarray,
    basis: Basis,
    config: KSpikeConfig,
) -> DirectionEstimate:
    """Learn one direction from exact moments of a known measure on the split alphabet."""
    lifted = basis.lift(direction)
    scale = 2.0 * float(np.max(np.abs(lifted)))
    heads = push_forward(reduced_truth, lambda p: (p @ lifted) / scale + 0.5)
    reconstruction = reconstruct_direction(exact_moments(heads, config.direction_K), config)
    return DirectionEstimate(
        direction=np.asarray(direction, dtype=float),
        measure=_to_projection(reconstruction, scale),
    )


def learn_kspike(
    batch1: SnapshotBatch,
    batch2: SnapshotBatch,
    batchK: SnapshotBatch,
    config: KSpikeConfig,
    rng: np.random.Generator,
    known_A: Optional[np.ndarray] = None,
) -> KSpikeResult:
    """Learn a k-spike mixture from 1-, 2- and (2k−1)-snapshots.

    Stages: isotropic splitting, second-moment estimate, spectral
    truncation, ellipsoid basis, per-direction coin reconstructions,
    the net LP and the final adjustment back to Δ_n. Failures are raised
    as :class:`~snapmix.errors.StageError` naming the stage.

    Args:
        batch1: 1-snapshots for the letter marginal.
        batch2: 2-snapshots for the second moment.
        batchK: Snapshots of length ``config.direction_K``.
        config: Learner parameters.
        rng: Source of randomness for splitting and coin flips.
        known_A: Exact second moment over the original alphabet; skips estimation.

    Returns:
        The learned mixture and its diagnostics.
    """
    n = batch1.n
    if batch2.n != n or batchK.n != n:
        raise ContractError("All batches must share the same alphabet")
    if batchK.K != config.direction_K:
        raise ContractError(f"Direction batch has K={batchK.K}, expected {config.direction_K}")
    timings: Dict[str, float] = {}
    reduce_rng, split_rng, direction_rng = split(rng, 3)

    reduction = reduce_dimension(
        batch1,
        batch2,
        config.k,
        config.epsilon,
        config.sigma,
        config.hypercube_constant,
        reduce_rng,
        known_A=known_A,
        poissonize=config.poissonize,
        basis_samples=config.basis_samples,
        timings=timings,
    )
    isotropy, basis, cut = reduction.isotropy, reduction.basis, reduction.cut

    with stage("directions", timings):
        batchK_iso = apply_isotropy(batchK, isotropy, split_rng)
        grid = build_directions(
            basis.h,
            config.R,
            cap=config.direction_cap,
            rng=direction_rng if config.subsample_directions else None,
        )
        estimates, reconstructions = [], []
        for direction, child in zip(grid.coordinates, split(direction_rng, len(grid))):
            estimate, reconstruction = learn_direction(batchK_iso, direction, basis, config, child)
            estimates.append(estimate)
            reconstructions.append(reconstruction)

    with stage("net", timings):
        radius = basis.L_tight
        epsilon2 = config.epsilon2 if config.epsilon2 is not None else radius / NET_RADIUS_DIVISIONS
        net = build_net(basis.h, radius, epsilon2, cap=config.net_cap)
        lp2 = lp2_reconstruct(estimates, net, epsilon2, slack_constant=config.lp2_slack_constant)
        audit = audit_lp2(lp2, estimates)

    with stage("adjust", timings):
        reduced = final_adjust(push_forward(lp2.coordinates, basis.matrix), basis, config.epsilon)
        measure = invert_isotropy(reduced, isotropy)

    diagnostics = KSpikeDiagnostics(
        n_prime=isotropy.n_prime,
        eliminated=list(isotropy.eliminated),
        dropped={
            "batch2": int(reduction.batch2.provenance["dropped"]),
            "batchK": int(batchK_iso.provenance["dropped"]),
        },
        spectral_cut=cut.cut,
        top_eigenvalues=[float(v) for v in cut.eigenvalues[: config.k + 1]],
        h=basis.h,
        L=basis.L,
        L_tight=basis.L_tight,
        basis_ratios=dict(reduction.report.ratios),
        n_directions=len(grid),
        directions_subsampled=grid.subsampled,
        direction_batch_reused=True,
        heuristic_directions=sum(r.heuristic for r in reconstructions),
        max_direction_residual=max(r.residual for r in reconstructions),
        net_size=len(net),
        lp2_slack=lp2.slack,
        lp2_doublings=lp2.doublings,
        lp2_audit_max=float(audit.max()),
        timings=timings,
    )
    logger.info("k-spike learner: h=%d, %d directions, %d atoms", basis.h, len(grid), measure.size)
    return KSpikeResult(measure=measure, reduced=reduced, basis=basis, isotropy=isotropy, diagnostics=diagnostics)
