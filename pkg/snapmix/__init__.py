"""snapmix - Learn mixtures of distributions from K-snapshots."""

from snapmix.coin import (
    FrequencyKind,
    FrequencyVector,
    Reconstruction,
    empirical_fq,
    exact_fq,
    exact_moments,
    fq_to_moments,
    normalize_fq,
    reconstruct_general,
    reconstruct_kspike_1d,
    reconstruct_naive,
)
from snapmix.errors import (
    ContractError,
    DegenerateInputError,
    NumericalError,
    PropertyViolationError,
    ReconstructionError,
    ResourceError,
    SnapmixError,
    StageError,
    ValidationError,
)
from snapmix.harness import (
    Budgets,
    ExperimentConfig,
    Pipeline,
    RunReport,
    generate,
    run_experiment,
    run_pipeline,
    sweep,
    trivial_estimator,
)
from snapmix.kdim import learn_kdim, project_snapshot
from snapmix.kspike import KSpikeConfig, KSpikeResult, learn_kspike
from snapmix.measures import (
    Density,
    DiscreteMeasure,
    Metric,
    MixtureKind,
    MixtureSpec,
    SnapshotBatch,
    draw_batch,
    l1_project_to_simplex,
    push_forward,
    transport_distance,
    transport_distance_1d,
)
from snapmix.rng import RandomStreams, make_rng
from snapmix.settings import get_settings, set_settings, settings_override
from snapmix.subspace import Basis, IsotropyMap, build_basis, final_adjust, reduce_dimension, verify_basis

__all__ = [
    "Basis",
    "Budgets",
    "ContractError",
    "DegenerateInputError",
    "Density",
    "DiscreteMeasure",
    "ExperimentConfig",
    "FrequencyKind",
    "FrequencyVector",
    "IsotropyMap",
    "KSpikeConfig",
    "KSpikeResult",
    "Metric",
    "MixtureKind",
    "MixtureSpec",
    "NumericalError",
    "Pipeline",
    "PropertyViolationError",
    "RandomStreams",
    "Reconstruction",
    "ReconstructionError",
    "ResourceError",
    "RunReport",
    "SnapmixError",
    "SnapshotBatch",
    "StageError",
    "ValidationError",
    "build_basis",
    "draw_batch",
    "empirical_fq",
    "exact_fq",
    "exact_moments",
    "final_adjust",
    "fq_to_moments",
    "generate",
    "get_settings",
    "l1_project_to_simplex",
    "learn_kdim",
    "learn_kspike",
    "make_rng",
    "normalize_fq",
    "project_snapshot",
    "push_forward",
    "reconstruct_general",
    "reconstruct_kspike_1d",
    "reconstruct_naive",
    "reduce_dimension",
    "run_experiment",
    "run_pipeline",
    "set_settings",
    "settings_override",
    "sweep",
    "transport_distance",
    "transport_distance_1d",
    "trivial_estimator",
    "verify_basis",
]
