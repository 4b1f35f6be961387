import pytest

from snapmix import ExperimentConfig, MixtureSpec, sweep
from snapmix.errors import ContractError
from snapmix.harness import SweepRow, read_sweep_csv, write_sweep_csv
from snapmix.harness.sweep import COLUMNS


@pytest.fixture
def template():
    return ExperimentConfig(pipeline="coin-kspike", k=2, K=3, N1=1, N2=1, NK=2_000, seed=0)


@pytest.fixture
def spec():
    return MixtureSpec.coin([0.25, 0.75], [0.5, 0.5])


def test_empty_sweep_writes_only_the_header(tmp_path):
    path = write_sweep_csv([], tmp_path / "sweep.csv")
    assert path.read_text().splitlines() == [",".join(COLUMNS)]
    assert read_sweep_csv(path) == []


def test_rows_are_sorted_by_value_then_seed(template, spec):
    rows = sweep(template, spec, "NK", [20_000, 2_000], seeds=[1, 0])
    assert [(row.value, row.seed) for row in rows] == [(2000.0, 0), (2000.0, 1), (20000.0, 0), (20000.0, 1)]
    assert all(row.error == "" and row.tran1 is not None for row in rows)


def test_template_seed_is_the_default(template, spec):
    rows = sweep(template.replace(seed=4), spec, "tau", [1 / 16])
    assert [row.seed for row in rows] == [4]


def test_sweep_points_are_independent_of_their_neighbours(template, spec):
    alone = sweep(template, spec, "NK", [2_000], seeds=[3])
    together = sweep(template, spec, "NK", [2_000, 4_000], seeds=[3])
    assert alone[0].tran1 == together[0].tran1


def test_failed_points_become_labelled_rows(template, spec):
    rows = sweep(template, spec, "tau", [2.0])
    assert rows[0].error == "ContractError"
    assert rows[0].tran1 is None


def test_unknown_axis_fails_before_running(template, spec):
    with pytest.raises(ContractError):
        sweep(template, spec, "pipeline", [1.0])


def test_csv_keeps_every_digit(tmp_path):
    rows = [SweepRow(value=0.1, seed=2, tran1=1 / 3, tran2=None, wall_time=0.5, error="")]
    assert read_sweep_csv(write_sweep_csv(rows, tmp_path / "rows.csv")) == rows
