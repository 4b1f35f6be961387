"""Reading and writing the harness's JSON and NumPy files."""

import json
import logging
from pathlib import Path
from typing import Any, Union

import numpy as np
from marshmallow import Schema
from marshmallow import ValidationError as SchemaValidationError

from ..errors import ValidationError
from ..ext.marshmallow import MeasureSchema, MixtureSpecSchema, ReductionSchema, SnapshotBatchSchema
from ..measures import DiscreteMeasure, MixtureSpec, SnapshotBatch
from .config import ExperimentConfig
from .report import RunReport
from .schemas import ExperimentConfigSchema, RunReportSchema

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def dump_json(schema: Schema, obj: Any, path: PathLike) -> Path:
    """Serialize *obj* with *schema* to *path*; the output is byte-identical for equal inputs."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(schema.dump(obj), sort_keys=True, indent=1)
    path.write_text(text + "\n", encoding="utf-8")
    logger.debug("wrote %s", path)
    return path


def load_json(schema: Schema, path: PathLike) -> Any:
    path = Path(path)
    try:
        return schema.load(json.loads(path.read_text(encoding="utf-8")))
    except (json.JSONDecodeError, SchemaValidationError) as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def save_measure(measure: DiscreteMeasure, path: PathLike) -> Path:
    return dump_json(MeasureSchema(), measure, path)


def load_measure(path: PathLike) -> DiscreteMeasure:
    return load_json(MeasureSchema(), path)


def save_batch(batch: SnapshotBatch, path: PathLike, sparse_counts: bool = False) -> Path:
    """Write *batch* with dense ``samples`` rows, or a CSR ``counts`` triplet when *sparse_counts* is set."""
    return dump_json(SnapshotBatchSchema(sparse_counts=sparse_counts), batch, path)


def load_batch(path: PathLike) -> SnapshotBatch:
    return load_json(SnapshotBatchSchema(), path)


def save_spec(spec: MixtureSpec, path: PathLike) -> Path:
    return dump_json(MixtureSpecSchema(), spec, path)


def load_spec(path: PathLike) -> MixtureSpec:
    return load_json(MixtureSpecSchema(), path)


def save_reduction(reduction: dict, path: PathLike) -> Path:
    """Write ``{"basis": Basis, "isotropy": IsotropyMap}``."""
    return dump_json(ReductionSchema(), reduction, path)


def load_reduction(path: PathLike) -> dict:
    return load_json(ReductionSchema(), path)


def save_config(config: ExperimentConfig, path: PathLike) -> Path:
    return dump_json(ExperimentConfigSchema(), config, path)


def load_config(path: PathLike) -> ExperimentConfig:
    return load_json(ExperimentConfigSchema(), path)


def save_report(report: RunReport, path: PathLike) -> Path:
    return dump_json(RunReportSchema(), report, path)


def load_report(path: PathLike) -> RunReport:
    return load_json(RunReportSchema(), path)


def save_matrix(matrix: np.ndarray, path: PathLike) -> Path:
    """Write a matrix as JSON ``{"shape", "data"}`` or, for a ``.npy`` suffix, in NumPy's binary format."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    matrix = np.asarray(matrix, dtype=float)
    if path.suffix == ".npy":
        np.save(path, matrix)
    else:
        payload = {"shape": list(matrix.shape), "data": matrix.reshape(-1).tolist()}
        path.write_text(json.dumps(payload) + "\n", encoding="utf-8")
    return path


def load_matrix(path: PathLike) -> np.ndarray:
    path = Path(path)
    if path.suffix == ".npy":
        return np.load(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        return np.asarray(payload["data"], dtype=float).reshape(payload["shape"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: not a matrix file") from exc
