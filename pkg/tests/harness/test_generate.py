import numpy as np
import pytest

from snapmix import Budgets, generate
from snapmix.harness import DataFiles, draw_data, load_batch, load_measure, load_spec


@pytest.fixture
def budgets():
    return Budgets(N1=200, N2=100, NK=50)


def test_generate_writes_every_file(three_coin_spec, budgets, tmp_path):
    files = generate(three_coin_spec, budgets, 6, seed=1, directory=tmp_path / "data")
    assert set(files.as_dict()) == {"batch1", "batch2", "batchK", "truth", "spec"}
    assert len(load_batch(files.batch1)) == 200
    assert load_batch(files.batch2).K == 2
    batchK = load_batch(files.batchK)
    assert (len(batchK), batchK.K) == (50, 6)
    np.testing.assert_array_equal(load_measure(files.truth).points, three_coin_spec.to_measure().points)
    assert load_spec(files.spec).k == 3


def test_same_seed_writes_identical_bytes(three_coin_spec, budgets, tmp_path):
    first = generate(three_coin_spec, budgets, 4, seed=7, directory=tmp_path / "a")
    second = generate(three_coin_spec, budgets, 4, seed=7, directory=tmp_path / "b")
    for name in ("batch1", "batch2", "batchK", "truth", "spec"):
        assert getattr(first, name).read_bytes() == getattr(second, name).read_bytes()


def test_different_seeds_draw_different_batches(three_coin_spec, budgets, tmp_path):
    first = generate(three_coin_spec, budgets, 4, seed=7, directory=tmp_path / "a")
    second = generate(three_coin_spec, budgets, 4, seed=8, directory=tmp_path / "b")
    assert first.batchK.read_bytes() != second.batchK.read_bytes()


def test_zero_budgets_write_empty_batches(three_coin_spec, tmp_path):
    files = generate(three_coin_spec, Budgets(), 4, seed=0, directory=tmp_path)
    for path in (files.batch1, files.batch2, files.batchK):
        assert len(load_batch(path)) == 0
    assert load_batch(files.batchK).K == 4


def test_continuous_truth_is_a_sample(segment_spec):
    data = draw_data(segment_spec, Budgets(N1=1, N2=1, NK=1), 2, seed=0)
    assert data.truth.size == 2000
    assert data.truth.is_probability()


def test_data_directory_without_truth(three_coin_spec, budgets, tmp_path):
    files = generate(three_coin_spec, budgets, 4, seed=0, directory=tmp_path)
    files.truth.unlink()
    found = DataFiles.in_directory(tmp_path)
    assert found.truth is None
    assert found.spec == files.spec
    assert "truth" not in found.as_dict()
