"""Learning k-spike mixtures through one-dimensional projections."""

from .directions import DirectionGrid, build_directions, coin_batch, coin_bias, project_snapshot_to_coin
from .lp2 import DirectionEstimate, LP2Result, audit_lp2, lp2_reconstruct
from .net import NetPoints, build_net
from .pipeline import (
    KSpikeConfig,
    KSpikeDiagnostics,
    KSpikeResult,
    learn_direction,
    learn_direction_exact,
    learn_kspike,
    reconstruct_direction,
)

__all__ = [
    "DirectionEstimate",
    "DirectionGrid",
    "KSpikeConfig",
    "KSpikeDiagnostics",
    "KSpikeResult",
    "LP2Result",
    "NetPoints",
    "audit_lp2",
    "build_directions",
    "build_net",
    "coin_batch",
    "coin_bias",
    "learn_direction",
    "learn_direction_exact",
    "learn_kspike",
    "lp2_reconstruct",
    "project_snapshot_to_coin",
    "reconstruct_direction",
]
