"""Experiment harness: configuration, data generation, runs, sweeps and the CLI."""

from .config import Budgets, ExperimentConfig, Pipeline, recommended_budgets
from .files import (
    load_batch,
    load_config,
    load_matrix,
    load_measure,
    load_reduction,
    load_report,
    load_spec,
    save_batch,
    save_config,
    save_matrix,
    save_measure,
    save_reduction,
    save_report,
    save_spec,
)
from .generate import DataFiles, GeneratedData, draw_data, generate
from .pipeline import (
    PipelineInputs,
    PipelineOutcome,
    run_experiment,
    run_pipeline,
    transport_to_truth,
    trivial_estimator,
)
from .report import RunReport
from .schemas import ExperimentConfigSchema, RunReportSchema, report_fingerprint
from .sweep import SweepRow, read_sweep_csv, sweep, write_sweep_csv

__all__ = [
    "Budgets",
    "DataFiles",
    "ExperimentConfig",
    "ExperimentConfigSchema",
    "GeneratedData",
    "Pipeline",
    "PipelineInputs",
    "PipelineOutcome",
    "RunReport",
    "RunReportSchema",
    "SweepRow",
    "draw_data",
    "generate",
    "load_batch",
    "load_config",
    "load_matrix",
    "load_measure",
    "load_reduction",
    "load_report",
    "load_spec",
    "read_sweep_csv",
    "recommended_budgets",
    "report_fingerprint",
    "run_experiment",
    "run_pipeline",
    "save_batch",
    "save_config",
    "save_matrix",
    "save_measure",
    "save_reduction",
    "save_report",
    "save_spec",
    "sweep",
    "transport_to_truth",
    "trivial_estimator",
    "write_sweep_csv",
]
