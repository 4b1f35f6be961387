"""Measures, mixtures, K-snapshot sampling and transportation distance."""

from .measure import DiscreteMeasure, Point, as_point, is_in_simplex
from .mixture import Density, MixtureKind, MixtureSpec, sample_constituent
from .pushforward import hypercube_mass, project_onto_direction, push_forward
from .simplex import clamp_renormalize, l1_distance_to_simplex, l1_project_to_simplex
from .snapshots import SnapshotBatch, draw_batch, poisson_batch_size, sample_k_snapshot
from .transport import (
    Metric,
    PiecewiseLinearFunction,
    TransportResult,
    dual_certificate_check,
    transport_distance,
    transport_distance_1d,
    transport_plan,
)

__all__ = [
    "Density",
    "DiscreteMeasure",
    "Metric",
    "MixtureKind",
    "MixtureSpec",
    "PiecewiseLinearFunction",
    "Point",
    "SnapshotBatch",
    "TransportResult",
    "as_point",
    "clamp_renormalize",
    "draw_batch",
    "dual_certificate_check",
    "hypercube_mass",
    "is_in_simplex",
    "l1_distance_to_simplex",
    "l1_project_to_simplex",
    "poisson_batch_size",
    "project_onto_direction",
    "push_forward",
    "sample_constituent",
    "sample_k_snapshot",
    "transport_distance",
    "transport_distance_1d",
    "transport_plan",
]
