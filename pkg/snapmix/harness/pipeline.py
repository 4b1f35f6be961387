"""Running a configured learner on a data set and scoring it against the truth."""

import logging
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..coin import empirical_fq, fq_to_moments, reconstruct_general, reconstruct_kspike_1d
from ..coin.frequency import HEADS
from ..errors import ContractError
from ..kdim import learn_kdim, learn_kdim_coordinates
from ..kspike import learn_kspike
from ..measures import (
    DiscreteMeasure,
    Metric,
    MixtureSpec,
    SnapshotBatch,
    transport_distance,
    transport_distance_1d,
)
from ..rng import RandomStreams, split
from ..stages import stage
from ..subspace import Reduction, apply_isotropy, exact_A, final_adjust, invert_isotropy, reduce_dimension
from .config import ExperimentConfig, Pipeline
from .files import PathLike, load_batch, load_measure, load_spec, save_measure, save_report
from .generate import DataFiles
from .report import RunReport

logger = logging.getLogger(__name__)

LEARN_STREAM = "learn"
EVALUATE_STREAM = "evaluate"


@dataclass(frozen=True, eq=False)
class PipelineInputs:
    """In-memory inputs of a run. ``truth`` enables scoring; ``spec`` enables the known-A shortcut."""

    batch1: SnapshotBatch
    batch2: SnapshotBatch
    batchK: SnapshotBatch
    truth: Optional[DiscreteMeasure] = None
    spec: Optional[MixtureSpec] = None

    @classmethod
    def load(cls, files: DataFiles) -> "PipelineInputs":
        return cls(
            batch1=load_batch(files.batch1),
            batch2=load_batch(files.batch2),
            batchK=load_batch(files.batchK),
            truth=load_measure(files.truth) if files.truth is not None else None,
            spec=load_spec(files.spec) if files.spec is not None else None,
        )


@dataclass(frozen=True, eq=False)
class PipelineOutcome:
    measure: DiscreteMeasure
    report: RunReport


def trivial_estimator(r_tilde: np.ndarray) -> DiscreteMeasure:
    """The single-point baseline δ_r̃ at the normalized letter marginal."""
    r_tilde = np.asarray(r_tilde, dtype=float).reshape(-1)
    if r_tilde.sum() <= 0:
        raise ContractError("The letter marginal has no mass")
    return DiscreteMeasure.point_mass(r_tilde / r_tilde.sum())


def letter_marginal(batch: SnapshotBatch) -> np.ndarray:
    if len(batch) == 0 or batch.K == 0:
        raise ContractError("Cannot estimate the letter marginal from an empty batch")
    return batch.letter_totals() / (len(batch) * batch.K)


def _compress(measure: DiscreteMeasure, support: int, rng: np.random.Generator) -> Tuple[DiscreteMeasure, bool]:
    # weighted resample down to `support` atoms
    if measure.size <= support:
        return measure, False
    index = rng.choice(measure.size, size=support, p=measure.weights / measure.total_mass)
    weights = np.full(support, measure.total_mass / support)
    return DiscreteMeasure(measure.points[index], weights), True


def transport_to_truth(
    learned: DiscreteMeasure,
    truth: DiscreteMeasure,
    metric: Metric,
    support: int,
    rng: np.random.Generator,
) -> Tuple[float, bool]:
    """Transportation distance for scoring, resampling measures with more than *support* atoms.

    One-dimensional measures use the exact CDF formula at any size.

    Returns:
        ``(distance, resampled)``.
    """
    if learned.dim == 1 and truth.dim == 1:
        return transport_distance_1d(learned, truth), False
    learned, first = _compress(learned, support, rng)
    truth, second = _compress(truth, support, rng)
    return transport_distance(learned, truth, metric), first or second


def _heads(measure: DiscreteMeasure) -> DiscreteMeasure:
    # coin truths are stored on Δ_2 as (1 - x, x)
    if measure.dim == 1:
        return measure
    return DiscreteMeasure(measure.points[:, HEADS : HEADS + 1], measure.weights)


def _check_coin_batch(batch: SnapshotBatch, config: ExperimentConfig) -> None:
    if batch.n != 2:
        raise ContractError(f"Coin pipelines need a two-letter batch, got n={batch.n}")
    if batch.K != config.K:
        raise ContractError(f"Batch has K={batch.K}, config says K={config.K}")


def _run_coin(config: ExperimentConfig, inputs: PipelineInputs, timings: Dict[str, float]) -> Tuple[Any, Dict]:
    batch = inputs.batchK
    _check_coin_batch(batch, config)
    with stage("coin", timings):
        fq = empirical_fq(batch, config.K)
        if config.pipeline is Pipeline.COIN_GENERAL:
            reconstruction = reconstruct_general(fq, config.eps_prime)
        else:
            reconstruction = reconstruct_kspike_1d(
                fq_to_moments(fq),
                config.k,
                config.tau,
                slack_constant=config.slack_constant,
                full_enumeration=config.full_enumeration,
            )
    diagnostics = {
        "residual": reconstruction.residual,
        "slack": reconstruction.slack,
        "doublings": reconstruction.doublings,
        "heuristic": reconstruction.heuristic,
        "support_size": reconstruction.measure.size,
        **reconstruction.details,
    }
    return reconstruction.measure, diagnostics


def _known_A(config: ExperimentConfig, inputs: PipelineInputs) -> Optional[np.ndarray]:
    if not config.known_A:
        return None
    if inputs.spec is None:
        raise ContractError("known_A needs the mixture spec file")
    return exact_A(inputs.spec)


def _projected_tran2(
    reduction: Reduction,
    coordinates: DiscreteMeasure,
    truth: DiscreteMeasure,
    config: ExperimentConfig,
    rng: np.random.Generator,
) -> float:
    # both sides in basis coordinates; the basis is orthonormal so L2 distances agree with span(B)
    split_truth = reduction.isotropy.split_measure(truth)
    projected = DiscreteMeasure(reduction.basis.coordinates(split_truth.points), split_truth.weights)
    distance, _ = transport_to_truth(coordinates, projected, Metric.L2, config.eval_support, rng)
    return distance


def _run_kdim(
    config: ExperimentConfig,
    inputs: PipelineInputs,
    timings: Dict[str, float],
    rng: np.random.Generator,
    evaluate_rng: np.random.Generator,
) -> Tuple[DiscreteMeasure, Dict]:
    reduce_rng, split_rng = split(rng, 2)
    reduction = reduce_dimension(
        inputs.batch1,
        inputs.batch2,
        config.k,
        config.epsilon,
        config.sigma,
        config.hypercube_constant,
        reduce_rng,
        known_A=_known_A(config, inputs),
        poissonize=config.poissonize,
        timings=timings,
    )
    with stage("kdim", timings):
        batchK = apply_isotropy(inputs.batchK, reduction.isotropy, split_rng)
        coordinates = learn_kdim_coordinates(batchK, reduction.basis)
        learned = learn_kdim(batchK, reduction.basis)
    with stage("adjust", timings):
        measure = invert_isotropy(final_adjust(learned, reduction.basis, config.epsilon), reduction.isotropy)

    diagnostics: Dict[str, Any] = {
        "n_prime": reduction.isotropy.n_prime,
        "eliminated": list(reduction.isotropy.eliminated),
        "dropped": {
            "batch2": reduction.batch2.provenance["dropped"],
            "batchK": batchK.provenance["dropped"],
        },
        "spectral_cut": reduction.cut.cut,
        "top_eigenvalues": reduction.cut.eigenvalues[: config.k + 1],
        "h": reduction.basis.h,
        "L": reduction.basis.L,
        "L_tight": reduction.basis.L_tight,
        "basis_ratios": reduction.report.ratios,
        "atoms": learned.size,
    }
    if inputs.truth is not None:
        diagnostics["tran2_projected"] = _projected_tran2(reduction, coordinates, inputs.truth, config, evaluate_rng)
    return measure, diagnostics


def _run_kspike(
    config: ExperimentConfig,
    inputs: PipelineInputs,
    timings: Dict[str, float],
    rng: np.random.Generator,
) -> Tuple[DiscreteMeasure, Dict]:
    result = learn_kspike(
        inputs.batch1,
        inputs.batch2,
        inputs.batchK,
        config.to_kspike_config(),
        rng,
        known_A=_known_A(config, inputs),
    )
    diagnostics = result.diagnostics.to_dict()
    timings.update(diagnostics.pop("timings"))
    return result.measure, diagnostics


def run_experiment(config: ExperimentConfig, inputs: PipelineInputs) -> PipelineOutcome:
    """Run the configured learner on in-memory batches and score it.

    The learner draws from the ``"learn"`` stream of ``config.seed`` and the
    scoring resampler from the ``"evaluate"`` stream, so reports depend on
    nothing but the config and the inputs.

    Raises:
        StageError: When a stage fails; the message names the stage.
    """
    streams = RandomStreams(config.seed)
    rng, evaluate_rng = streams.stream(LEARN_STREAM), streams.stream(EVALUATE_STREAM)
    timings: Dict[str, float] = {}
    start = time.perf_counter()

    if config.pipeline.is_coin:
        measure, diagnostics = _run_coin(config, inputs, timings)
    elif config.pipeline is Pipeline.KDIM:
        measure, diagnostics = _run_kdim(config, inputs, timings, rng, evaluate_rng)
    else:
        measure, diagnostics = _run_kspike(config, inputs, timings, rng)

    tran1 = tran2 = trivial = None
    if inputs.truth is not None:
        with stage("evaluate", timings):
            truth = _heads(inputs.truth) if config.pipeline.is_coin else inputs.truth
            if config.pipeline.is_coin:
                baseline = trivial_estimator(letter_marginal(inputs.batchK))
                baseline = _heads(baseline)
            else:
                baseline = trivial_estimator(letter_marginal(inputs.batch1))
            tran1, resampled1 = transport_to_truth(measure, truth, Metric.L1, config.eval_support, evaluate_rng)
            tran2, resampled2 = transport_to_truth(measure, truth, Metric.L2, config.eval_support, evaluate_rng)
            trivial, _ = transport_to_truth(baseline, truth, Metric.L1, config.eval_support, evaluate_rng)
            diagnostics["evaluation_resampled"] = resampled1 or resampled2

    timings["total"] = time.perf_counter() - start
    report = RunReport(
        config=config,
        timings=timings,
        diagnostics=diagnostics,
        tran1=tran1,
        tran2=tran2,
        trivial_tran1=trivial,
        recommended_budgets=config.recommended_budgets(),
    )
    logger.info("%s run finished: tran1=%s tran2=%s", config.pipeline.value, tran1, tran2)
    return PipelineOutcome(measure=measure, report=report)


def run_pipeline(config: ExperimentConfig, files: DataFiles, out_dir: Optional[PathLike] = None) -> RunReport:
    """Load a data set, run the configured learner and write its outputs.

    Without a truth file the distance fields of the report stay empty.

    Args:
        config: Experiment configuration.
        files: Paths of the batches, and optionally of the truth and spec.
        out_dir: Where to write ``measure.json`` and ``report.json``; nothing is written when ``None``.

    Returns:
        The run report, with ``outputs`` listing the files written.
    """
    outcome = run_experiment(config, PipelineInputs.load(files))
    report = outcome.report
    if out_dir is not None:
        out_dir = Path(out_dir)
        outputs = {
            "measure": str(save_measure(outcome.measure, out_dir / "measure.json")),
            "report": str(out_dir / "report.json"),
        }
        report = replace(report, outputs=outputs)
        save_report(report, out_dir / "report.json")
    return report
