"""Parameter sweeps written as CSV tables."""

import csv
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from ..errors import SnapmixError
from ..measures import MixtureSpec
from .config import ExperimentConfig, coerce_axis_value
from .files import PathLike
from .generate import draw_data
from .pipeline import PipelineInputs, run_experiment

logger = logging.getLogger(__name__)

COLUMNS = ("value", "tran1", "tran2", "wall_time", "seed", "error")


@dataclass(frozen=True)
class SweepRow:
    value: float
    seed: int
    tran1: Optional[float] = None
    tran2: Optional[float] = None
    wall_time: float = 0.0
    error: str = ""

    def as_csv(self) -> dict:
        return {
            "value": _format(self.value),
            "tran1": _format(self.tran1),
            "tran2": _format(self.tran2),
            "wall_time": _format(self.wall_time),
            "seed": str(self.seed),
            "error": self.error,
        }


def _format(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".17g")


def run_point(template: ExperimentConfig, spec: MixtureSpec, axis: str, value: float, seed: int) -> SweepRow:
    """Generate data and run one sweep point. Failures become rows carrying the error label."""
    start = time.perf_counter()
    try:
        config = template.replace(**{axis: coerce_axis_value(axis, value), "seed": seed})
        data = draw_data(spec, config.budgets, config.K, seed)
        inputs = PipelineInputs(data.batch1, data.batch2, data.batchK, truth=data.truth, spec=spec)
        report = run_experiment(config, inputs).report
    except SnapmixError as exc:
        logger.warning("sweep point %s=%s seed=%d failed: %s", axis, value, seed, exc)
        return SweepRow(value=value, seed=seed, wall_time=time.perf_counter() - start, error=type(exc).__name__)
    return SweepRow(
        value=value,
        seed=seed,
        tran1=report.tran1,
        tran2=report.tran2,
        wall_time=time.perf_counter() - start,
    )


def sweep(
    template: ExperimentConfig,
    spec: MixtureSpec,
    axis: str,
    values: Iterable[float],
    seeds: Optional[Sequence[int]] = None,
) -> List[SweepRow]:
    """Run *template* once per value of *axis* and per seed.

    Each run draws its own data from *spec* with its seed, so changing the
    axis value never changes the randomness of another row.

    Args:
        template: Base configuration.
        spec: Ground-truth mixture to sample from.
        axis: Name of a numeric :class:`ExperimentConfig` field.
        values: Values to sweep.
        seeds: Seeds per value; defaults to the template's seed.

    Returns:
        Rows sorted by value, then seed.
    """
    coerce_axis_value(axis, 0)
    seeds = [template.seed] if seeds is None else list(seeds)
    rows = [run_point(template, spec, axis, float(value), seed) for value in values for seed in seeds]
    return sorted(rows, key=lambda row: (row.value, row.seed))


def write_sweep_csv(rows: Iterable[SweepRow], path: PathLike) -> Path:
    """Write rows with the fixed column order; an empty sweep writes only the header."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.as_csv())
    return path


def read_sweep_csv(path: PathLike) -> List[SweepRow]:
    with Path(path).open(newline="", encoding="utf-8") as handle:
        return [
            SweepRow(
                value=float(record["value"]),
                seed=int(record["seed"]),
                tran1=float(record["tran1"]) if record["tran1"] else None,
                tran2=float(record["tran2"]) if record["tran2"] else None,
                wall_time=float(record["wall_time"]),
                error=record["error"],
            )
            for record in csv.DictReader(handle)
        ]
