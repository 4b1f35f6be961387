"""Synthetic data generation."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional

from ..measures import DiscreteMeasure, MixtureSpec, SnapshotBatch, draw_batch
from ..rng import RandomStreams
from .config import Budgets
from .files import PathLike, save_batch, save_measure, save_spec

logger = logging.getLogger(__name__)

GENERATE_STREAM = "generate"
TRUTH_POINTS = 2000


@dataclass(frozen=True)
class GeneratedData:
    batch1: SnapshotBatch
    batch2: SnapshotBatch
    batchK: SnapshotBatch
    truth: DiscreteMeasure


@dataclass(frozen=True)
class DataFiles:
    """Paths of a generated data set. ``truth`` and ``spec`` are optional for learning runs."""

    batch1: Path
    batch2: Path
    batchK: Path
    truth: Optional[Path] = None
    spec: Optional[Path] = None

    @classmethod
    def in_directory(cls, directory: PathLike) -> "DataFiles":
        directory = Path(directory)
        truth, spec = directory / "truth.json", directory / "spec.json"
        return cls(
            batch1=directory / "batch1.json",
            batch2=directory / "batch2.json",
            batchK=directory / "batchK.json",
            truth=truth if truth.exists() else None,
            spec=spec if spec.exists() else None,
        )

    def as_dict(self) -> Dict[str, str]:
        return {name: str(path) for name, path in self.__dict__.items() if path is not None}


def draw_data(spec: MixtureSpec, budgets: Budgets, K: int, seed: int) -> GeneratedData:
    """Draw the three batches and the ground-truth measure.

    Randomness comes from the ``"generate"`` stream of *seed*, which no
    learner uses. Continuous mixtures get a Monte-Carlo truth of
    ``TRUTH_POINTS`` constituents.
    """
    rng = RandomStreams(seed).stream(GENERATE_STREAM)
    batch1 = draw_batch(spec, 1, budgets.N1, rng)
    batch2 = draw_batch(spec, 2, budgets.N2, rng)
    batchK = draw_batch(spec, K, budgets.NK, rng)
    truth = spec.discretize(TRUTH_POINTS, rng)
    return GeneratedData(batch1=batch1, batch2=batch2, batchK=batchK, truth=truth)


def generate(spec: MixtureSpec, budgets: Budgets, K: int, seed: int, directory: PathLike) -> DataFiles:
    """Draw a data set and write it to *directory*.

    Args:
        spec: Ground-truth mixture.
        budgets: Numbers of 1-, 2- and K-snapshots. Zero budgets write empty batches.
        K: Snapshot length of the third batch.
        seed: Data seed; the same seed writes byte-identical files.
        directory: Output directory, created if missing.

    Returns:
        The paths written: ``batch1.json``, ``batch2.json``, ``batchK.json``,
        ``truth.json`` and ``spec.json``.
    """
    data = draw_data(spec, budgets, K, seed)
    files = DataFiles(
        batch1=Path(directory) / "batch1.json",
        batch2=Path(directory) / "batch2.json",
        batchK=Path(directory) / "batchK.json",
        truth=Path(directory) / "truth.json",
        spec=Path(directory) / "spec.json",
    )
    save_batch(data.batch1, files.batch1)
    save_batch(data.batch2, files.batch2)
    save_batch(data.batchK, files.batchK)
    save_measure(data.truth, files.truth)
    save_spec(spec, files.spec)
    logger.info("generated %s into %s", budgets, directory)
    return files
