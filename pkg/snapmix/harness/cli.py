"""Command-line interface: ``snapmix <command> ...``."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

from ..coin import empirical_fq, fq_to_moments, reconstruct_general, reconstruct_kspike_1d
from ..errors import SnapmixError
from ..kdim import learn_kdim
from ..kspike import learn_kspike
from ..measures import Metric, transport_distance
from ..rng import RandomStreams
from ..subspace import apply_isotropy, final_adjust, invert_isotropy, reduce_dimension
from .config import Budgets, ExperimentConfig, Pipeline, kdim_hypercube_constant
from .files import (
    load_batch,
    load_config,
    load_matrix,
    load_measure,
    load_reduction,
    load_spec,
    save_measure,
    save_matrix,
    save_reduction,
)
from .generate import DataFiles, generate
from .pipeline import LEARN_STREAM, run_pipeline
from .report import to_jsonable
from .sweep import sweep, write_sweep_csv

logger = logging.getLogger(__name__)

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _csv_numbers(text: str) -> List[float]:
    return [float(item) for item in text.split(",") if item.strip()]


def _csv_ints(text: str) -> List[int]:
    return [int(item) for item in text.split(",") if item.strip()]


def _config(args: argparse.Namespace, pipeline: Pipeline, **overrides: Any) -> ExperimentConfig:
    """Config file values, overridden by any flag the user gave."""
    if getattr(args, "config", None):
        config = load_config(args.config)
    else:
        config = ExperimentConfig(pipeline=pipeline, **{k: v for k, v in overrides.items() if v is not None})
        overrides = {}
    changes = {k: v for k, v in overrides.items() if v is not None}
    return config.replace(**changes) if changes else config


def _cmd_generate(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    files = generate(spec, Budgets(N1=args.N1, N2=args.N2, NK=args.NK), args.K, args.seed, args.out)
    print(json.dumps(files.as_dict(), indent=1))
    return 0


def _cmd_learn_1d(args: argparse.Namespace) -> int:
    batch = load_batch(args.input)
    K = args.K if args.K is not None else batch.K
    fq = empirical_fq(batch, K)
    if args.mode == "general":
        reconstruction = reconstruct_general(fq, args.eps_prime)
    else:
        reconstruction = reconstruct_kspike_1d(fq_to_moments(fq), args.k, args.tau)
    save_measure(reconstruction.measure, args.out)
    print(json.dumps({"residual": reconstruction.residual, "slack": reconstruction.slack}))
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    C = args.C if args.C is not None else kdim_hypercube_constant(args.k, args.epsilon)
    reduction = reduce_dimension(
        load_batch(args.snapshots1),
        load_batch(args.snapshots2),
        args.k,
        args.epsilon,
        args.sigma,
        C,
        RandomStreams(args.seed).stream(LEARN_STREAM),
        known_A=load_matrix(args.known_A) if args.known_A else None,
    )
    save_reduction({"basis": reduction.basis, "isotropy": reduction.isotropy}, args.out)
    if args.save_A:
        save_matrix(reduction.A, args.save_A)
    print(json.dumps({"h": reduction.basis.h, "n_prime": reduction.isotropy.n_prime, "L": reduction.basis.L}))
    return 0


def _cmd_learn_kdim(args: argparse.Namespace) -> int:
    reduction = load_reduction(args.basis)
    basis, isotropy = reduction["basis"], reduction["isotropy"]
    batch = apply_isotropy(load_batch(args.snapshots), isotropy, RandomStreams(args.seed).stream(LEARN_STREAM))
    learned = learn_kdim(batch, basis)
    epsilon = args.epsilon if args.epsilon is not None else basis.epsilon
    measure = invert_isotropy(final_adjust(learned, basis, epsilon), isotropy)
    save_measure(measure, args.out)
    return 0


def _cmd_learn_kspike(args: argparse.Namespace) -> int:
    batch1, batch2, batchK = load_batch(args.snapshots1), load_batch(args.snapshots2), load_batch(args.snapshotsK)
    config = _config(
        args,
        Pipeline.KSPIKE,
        n=args.n,
        k=args.k,
        K=batchK.K,
        epsilon=args.epsilon,
        sigma=args.sigma if args.sigma is not None or args.epsilon is None else args.epsilon / 8,
        seed=args.seed,
        N1=len(batch1),
        N2=len(batch2),
        NK=len(batchK),
    )
    rng = RandomStreams(config.seed).stream(LEARN_STREAM)
    result = learn_kspike(batch1, batch2, batchK, config.to_kspike_config(), rng)
    save_measure(result.measure, args.out)
    if args.diag:
        Path(args.diag).write_text(json.dumps(to_jsonable(result.diagnostics.to_dict()), indent=1) + "\n")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    report = run_pipeline(config, DataFiles.in_directory(args.data), args.out)
    print(json.dumps({"tran1": report.tran1, "tran2": report.tran2, "outputs": report.outputs}))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    value = transport_distance(load_measure(args.a), load_measure(args.b), Metric(args.metric.lower()))
    print(format(value, ".17g"))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    rows = sweep(
        load_config(args.config),
        load_spec(args.spec),
        args.axis,
        _csv_numbers(args.values),
        seeds=_csv_ints(args.seeds) if args.seeds else None,
    )
    write_sweep_csv(rows, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snapmix", description="Learn mixtures of distributions from K-snapshots.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Repeat for more log output")
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("generate", help="Draw batch1, batch2, batchK and the truth from a mixture spec")
    cmd.add_argument("--spec", required=True, help="MixtureSpec JSON file")
    cmd.add_argument("--K", type=int, required=True, help="Snapshot length of batchK")
    cmd.add_argument("--N1", type=int, default=0)
    cmd.add_argument("--N2", type=int, default=0)
    cmd.add_argument("--NK", type=int, default=0)
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--out", required=True, help="Output directory")
    cmd.set_defaults(handler=_cmd_generate)

    cmd = commands.add_parser("learn-1d", help="Learn a mixture of coins from a two-letter batch")
    cmd.add_argument("--mode", choices=("general", "kspike"), default="general")
    cmd.add_argument("--K", type=int, help="Snapshot length; defaults to the batch's")
    cmd.add_argument("--k", type=int, default=1, help="Number of spikes (kspike mode)")
    cmd.add_argument("--tau", type=float, default=1.0 / 16, help="Grid step (kspike mode)")
    cmd.add_argument("--eps-prime", dest="eps_prime", type=float, default=0.05, help="LP slack (general mode)")
    cmd.add_argument("--in", dest="input", required=True, help="SnapshotBatch JSON file")
    cmd.add_argument("--out", required=True, help="Output measure JSON")
    cmd.set_defaults(handler=_cmd_learn_1d)

    cmd = commands.add_parser("reduce", help="Find the reduced basis from 1- and 2-snapshots")
    cmd.add_argument("--snapshots1", required=True)
    cmd.add_argument("--snapshots2", required=True)
    cmd.add_argument("--k", type=int, required=True)
    cmd.add_argument("--epsilon", type=float, required=True)
    cmd.add_argument("--sigma", type=float, required=True)
    cmd.add_argument("--C", type=float, help="Hypercube constant; defaults to 5k^2/epsilon")
    cmd.add_argument("--known-A", dest="known_A", help="Exact second moment (JSON or .npy)")
    cmd.add_argument("--save-A", dest="save_A", help="Write the isotropic second moment here (JSON or .npy)")
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--out", required=True, help="Output basis JSON")
    cmd.set_defaults(handler=_cmd_reduce)

    cmd = commands.add_parser("learn-kdim", help="Learn a mixture near a low-dimensional subspace")
    cmd.add_argument("--basis", required=True, help="Basis JSON written by 'reduce'")
    cmd.add_argument("--snapshots", required=True)
    cmd.add_argument("--epsilon", type=float, help="Final adjustment accuracy; defaults to the basis's")
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--out", required=True)
    cmd.set_defaults(handler=_cmd_learn_kdim)

    cmd = commands.add_parser("learn-kspike", help="Learn a k-spike mixture")
    cmd.add_argument("--n", type=int)
    cmd.add_argument("--k", type=int)
    cmd.add_argument("--epsilon", type=float)
    cmd.add_argument("--sigma", type=float)
    cmd.add_argument("--seed", type=int)
    cmd.add_argument("--snapshots1", required=True)
    cmd.add_argument("--snapshots2", required=True)
    cmd.add_argument("--snapshotsK", required=True)
    cmd.add_argument("--config", help="ExperimentConfig JSON; flags override its values")
    cmd.add_argument("--out", required=True)
    cmd.add_argument("--diag", help="Write diagnostics JSON here")
    cmd.set_defaults(handler=_cmd_learn_kspike)

    cmd = commands.add_parser("run", help="Run a configured pipeline on a generated data directory")
    cmd.add_argument("--config", required=True)
    cmd.add_argument("--data", required=True, help="Directory written by 'generate'")
    cmd.add_argument("--out", required=True, help="Directory for measure.json and report.json")
    cmd.set_defaults(handler=_cmd_run)

    cmd = commands.add_parser("eval", help="Print the transportation distance between two measures")
    cmd.add_argument("--a", required=True)
    cmd.add_argument("--b", required=True)
    cmd.add_argument("--metric", choices=("L1", "L2"), default="L1")
    cmd.set_defaults(handler=_cmd_eval)

    cmd = commands.add_parser("sweep", help="Sweep one config field and write a CSV table")
    cmd.add_argument("--config", required=True, help="Template ExperimentConfig JSON")
    cmd.add_argument("--spec", required=True, help="MixtureSpec JSON")
    cmd.add_argument("--axis", required=True, help="Numeric config field to vary")
    cmd.add_argument("--values", default="", help="Comma-separated values")
    cmd.add_argument("--seeds", help="Comma-separated seeds per value")
    cmd.add_argument("--out", required=True)
    cmd.set_defaults(handler=_cmd_sweep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=_LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except SnapmixError as exc:
        print(f"snapmix {args.command}: {exc}", file=sys.stderr)
        return 1

