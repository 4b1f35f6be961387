"""Marshmallow schemas for experiment configurations and run reports."""

import hashlib
import json
from typing import Any, Dict

from marshmallow import EXCLUDE, RAISE, Schema, fields, post_load

from .config import ExperimentConfig, Pipeline
from .report import RunReport


class ExperimentConfigSchema(Schema):
    class Meta:
        unknown = RAISE

    pipeline = fields.Enum(Pipeline, by_value=True, required=True)
    n = fields.Integer()
    k = fields.Integer()
    K = fields.Integer()
    epsilon = fields.Float()
    N1 = fields.Integer()
    N2 = fields.Integer()
    NK = fields.Integer()
    tau = fields.Float()
    eps_prime = fields.Float()
    eps_2 = fields.Float(allow_none=True)
    R = fields.Integer()
    C = fields.Float(allow_none=True)
    sigma = fields.Float()
    seed = fields.Integer()
    slack_constant = fields.Float()
    lp2_slack_constant = fields.Float()
    net_cap = fields.Integer()
    direction_cap = fields.Integer()
    eval_support = fields.Integer()
    poissonize = fields.Boolean()
    known_A = fields.Boolean()
    full_enumeration = fields.Boolean(allow_none=True)
    subsample_directions = fields.Boolean()

    @post_load
    def make_config(self, data: Dict[str, Any], **kwargs) -> ExperimentConfig:
        return ExperimentConfig(**data)


class RunReportSchema(Schema):
    """Report JSON. ``fingerprint`` is written on dump and ignored on load."""

    class Meta:
        unknown = EXCLUDE

    config = fields.Nested(ExperimentConfigSchema, required=True)
    timings = fields.Dict(keys=fields.String(), values=fields.Float())
    diagnostics = fields.Dict(keys=fields.String())
    tran1 = fields.Float(allow_none=True)
    tran2 = fields.Float(allow_none=True)
    trivial_tran1 = fields.Float(allow_none=True)
    recommended_budgets = fields.Dict(keys=fields.String(), values=fields.Float())
    outputs = fields.Dict(keys=fields.String(), values=fields.String())
    fingerprint = fields.Method("get_fingerprint", dump_only=True)

    def get_fingerprint(self, report: RunReport) -> str:
        return report_fingerprint(report)

    @post_load
    def make_report(self, data: Dict[str, Any], **kwargs) -> RunReport:
        return RunReport(**data)


def report_fingerprint(report: RunReport) -> str:
    """SHA-256 of every reproducible field of *report*: everything except timings and output paths."""
    payload = RunReportSchema(exclude=("timings", "outputs", "fingerprint")).dump(report)
    encoded = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(encoded).hexdigest()
