"""Marshmallow fields and schemas for snapmix's JSON file formats.

Floats are written through ``json``'s shortest round-trip representation, so
a dump/load cycle reproduces every array bit for bit.
"""

from typing import Any, Dict

import numpy as np
from marshmallow import Schema, ValidationError, fields, missing, post_load, validates_schema
from scipy import sparse

from snapmix.measures import Density, DiscreteMeasure, MixtureKind, MixtureSpec, SnapshotBatch
from snapmix.subspace import Basis, IsotropyMap

__all__ = [
    "ArrayField",
    "BasisSchema",
    "CountsField",
    "IsotropyMapSchema",
    "MeasureSchema",
    "MixtureSpecSchema",
    "ReductionSchema",
    "SnapshotBatchSchema",
    "SpikeSchema",
]

_VALID_DTYPES = ("float", "int")


class ArrayField(fields.Field):
    """Marshmallow field for numpy arrays, stored as nested JSON lists.

    Args:
        dtype: ``"float"`` (default) or ``"int"``.
        ndim: Expected number of dimensions after loading, or ``None`` to accept any.
    """

    default_error_messages = {
        "invalid": "Not a valid numeric array.",
        "invalid_ndim": "Expected an array with {ndim} dimensions.",
    }

    def __init__(self, dtype: str = "float", ndim: int | None = None, **kwargs) -> None:
        super().__init__(**kwargs)
        if dtype not in _VALID_DTYPES:
            raise ValueError(f"Invalid dtype: '{dtype}'. Expected one of {_VALID_DTYPES}")
        self.dtype = float if dtype == "float" else np.int64
        self.ndim = ndim

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        try:
            array = np.asarray(value, dtype=self.dtype)
        except (TypeError, ValueError) as exc:
            raise self.make_error("invalid") from exc
        return array.tolist()

    def _deserialize(self, value, attr, data, **kwargs):
        if value is None:
            return None
        try:
            array = np.asarray(value, dtype=self.dtype)
        except (TypeError, ValueError) as exc:
            raise self.make_error("invalid") from exc
        if self.ndim is not None:
            if array.size == 0 and array.ndim < self.ndim:
                array = array.reshape((0,) * self.ndim)
            elif array.ndim != self.ndim:
                raise self.make_error("invalid_ndim", ndim=self.ndim)
        return array


class CountsField(fields.Field):
    """Sparse snapshot counts as a CSR triplet ``{"shape", "indptr", "indices", "data"}``."""

    default_error_messages = {
        "invalid": "Not a valid sparse count matrix.",
    }

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        matrix = sparse.csr_array(value)
        return {
            "shape": [int(s) for s in matrix.shape],
            "indptr": matrix.indptr.astype(np.int64).tolist(),
            "indices": matrix.indices.astype(np.int64).tolist(),
            "data": matrix.data.astype(np.int64).tolist(),
        }

    def _deserialize(self, value, attr, data, **kwargs):
        if value is None:
            return None
        try:
            shape = tuple(int(s) for s in value["shape"])
            return sparse.csr_array(
                (
                    np.asarray(value["data"], dtype=np.int64),
                    np.asarray(value["indices"], dtype=np.int64),
                    np.asarray(value["indptr"], dtype=np.int64),
                ),
                shape=shape,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise self.make_error("invalid") from exc


class MeasureSchema(Schema):
    """``{"dim": d, "points": [[...], ...], "weights": [...]}``; ``dim`` is optional on load."""

    dim = fields.Integer(load_default=None)
    points = ArrayField(ndim=2, required=True)
    weights = ArrayField(ndim=1, required=True)

    @validates_schema
    def check_dim(self, data: Dict[str, Any], **kwargs) -> None:
        dim, points = data.get("dim"), data.get("points")
        if dim is not None and points is not None and points.size and points.shape[1] != dim:
            raise ValidationError(f"Points have {points.shape[1]} coordinates but dim is {dim}", "dim")

    @post_load
    def make_measure(self, data: Dict[str, Any], **kwargs) -> DiscreteMeasure:
        return DiscreteMeasure(data["points"], data["weights"])


class SpikeSchema(Schema):
    """One atom of a spike mixture: ``{"point": [...], "weight": w}``."""

    point = ArrayField(ndim=1, required=True)
    weight = fields.Float(required=True)


class MixtureSpecSchema(Schema):
    """``{kind, n, k, spikes | vertices}``.

    Spike kinds list their atoms under ``spikes`` as ``{"point", "weight"}``
    objects; continuous kinds carry ``vertices`` instead.
    """

    kind = fields.Enum(MixtureKind, by_value=True, required=True)
    n = fields.Integer(required=True)
    k = fields.Integer(required=True)
    spikes = fields.Method("dump_spikes", deserialize="load_spikes", load_default=None)
    vertices = ArrayField(ndim=2, allow_none=True, load_default=None)
    density = fields.Enum(Density, by_value=True, load_default=Density.UNIFORM)
    dirichlet_alpha = ArrayField(ndim=1, allow_none=True, load_default=None)
    seed = fields.Integer(allow_none=True, load_default=None)

    def dump_spikes(self, spec: MixtureSpec):
        if spec.spike_points is None:
            return None
        return [
            {"point": point.tolist(), "weight": float(weight)}
            for point, weight in zip(spec.spike_points, spec.spike_weights)
        ]

    def load_spikes(self, value):
        spikes = SpikeSchema(many=True).load(value)
        if not spikes:
            raise ValidationError("At least one spike is required")
        return np.vstack([s["point"] for s in spikes]), np.array([s["weight"] for s in spikes])

    @post_load
    def make_spec(self, data: Dict[str, Any], **kwargs) -> MixtureSpec:
        spikes = data.pop("spikes", None)
        if spikes is not None:
            data["spike_points"], data["spike_weights"] = spikes
        return MixtureSpec(**data)


_SAMPLES = ArrayField(dtype="int", ndim=2)
_COUNTS = CountsField()


class SnapshotBatchSchema(Schema):
    """``{n, K, seed, samples: [[count, ...], ...]}`` with one dense count row per snapshot.

    With ``sparse_counts=True`` the rows are written as a CSR triplet under
    ``counts`` instead. Loading accepts either form.
    """

    n = fields.Integer(required=True)
    K = fields.Integer(required=True)
    seed = fields.Integer(allow_none=True, load_default=None)
    samples = fields.Method("dump_samples", deserialize="load_samples", load_default=None)
    counts = fields.Method("dump_counts", deserialize="load_counts", load_default=None)
    provenance = fields.Dict(keys=fields.String(), load_default=dict)

    def __init__(self, *args, sparse_counts: bool = False, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.sparse_counts = sparse_counts

    def dump_samples(self, batch: SnapshotBatch):
        if self.sparse_counts:
            return missing
        return _SAMPLES.serialize("counts", {"counts": batch.to_dense()})

    def dump_counts(self, batch: SnapshotBatch):
        if not self.sparse_counts:
            return missing
        return _COUNTS.serialize("counts", batch)

    def load_samples(self, value):
        return _SAMPLES.deserialize(value)

    def load_counts(self, value):
        return _COUNTS.deserialize(value)

    @validates_schema
    def check_counts(self, data: Dict[str, Any], **kwargs) -> None:
        samples, counts = data.get("samples"), data.get("counts")
        if (samples is None) == (counts is None):
            raise ValidationError("Exactly one of samples or counts is required")
        if samples is not None and samples.size and samples.shape[1] != data.get("n"):
            raise ValidationError(f"Samples must have {data.get('n')} columns, got {samples.shape[1]}", "samples")

    @post_load
    def make_batch(self, data: Dict[str, Any], **kwargs) -> SnapshotBatch:
        samples = data.pop("samples")
        if samples is not None:
            data["counts"] = sparse.csr_array(samples.reshape(-1, data["n"]))
        return SnapshotBatch(**data)


class IsotropyMapSchema(Schema):
    sigma = fields.Float(required=True)
    r_tilde = ArrayField(ndim=1, required=True)
    copies = ArrayField(dtype="int", ndim=1, required=True)

    @post_load
    def make_map(self, data: Dict[str, Any], **kwargs) -> IsotropyMap:
        return IsotropyMap(**data)


class BasisSchema(Schema):
    matrix = ArrayField(ndim=2, required=True)
    L = fields.Float(required=True)
    C = fields.Float(allow_none=True, load_default=None)
    epsilon = fields.Float(allow_none=True, load_default=None)
    k = fields.Integer(allow_none=True, load_default=None)
    span = ArrayField(ndim=2, allow_none=True, load_default=None)
    axis_lengths = ArrayField(ndim=1, load_default=lambda: np.empty(0))
    dropped_lengths = ArrayField(ndim=1, load_default=lambda: np.empty(0))

    @post_load
    def make_basis(self, data: Dict[str, Any], **kwargs) -> Basis:
        return Basis(**data)


class ReductionSchema(Schema):
    """The ``reduce`` output: a basis over the isotropic alphabet and the map that produced that alphabet."""

    basis = fields.Nested(BasisSchema, required=True)
    isotropy = fields.Nested(IsotropyMapSchema, required=True)
