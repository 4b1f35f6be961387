"""Tests for K-snapshot sampling and SnapshotBatch."""

import numpy as np
import pytest
from scipy import sparse

from snapmix import MixtureSpec, SnapshotBatch, ValidationError, draw_batch, make_rng
from snapmix.errors import ContractError
from snapmix.measures import poisson_batch_size, sample_k_snapshot


def test_from_dense_infers_K():
    batch = SnapshotBatch.from_dense([[2, 1, 0], [0, 0, 3]])
    assert batch.K == 3
    assert batch.n == 3
    assert len(batch) == 2


def test_rows_must_sum_to_K():
    with pytest.raises(ValidationError, match="Snapshot 1 has 2 letters"):
        SnapshotBatch.from_dense([[1, 2], [1, 1]], K=3)


def test_negative_counts_are_rejected():
    with pytest.raises(ValidationError, match="non-negative"):
        SnapshotBatch(n=2, K=1, counts=sparse.csr_array(np.array([[2, -1]])))


def test_empty_batch_is_valid():
    batch = SnapshotBatch.empty(n=4, K=3)
    assert len(batch) == 0
    np.testing.assert_array_equal(batch.letter_totals(), np.zeros(4))


def test_empty_dense_batch_needs_K():
    with pytest.raises(ValidationError, match="K must be given"):
        SnapshotBatch.from_dense(np.zeros((0, 2)))


def test_letter_totals_and_head():
    batch = SnapshotBatch.from_dense([[1, 1], [2, 0], [0, 2]])
    np.testing.assert_array_equal(batch.letter_totals(), [3, 3])
    assert len(batch.head(2)) == 2
    np.testing.assert_array_equal(batch.head(2).to_dense(), [[1, 1], [2, 0]])


def test_occurrences_lists_non_zero_counts():
    batch = SnapshotBatch.from_dense([[2, 0, 1], [0, 3, 0]])
    rows, letters, multiplicity = batch.occurrences()
    assert rows.tolist() == [0, 0, 1]
    assert letters.tolist() == [0, 2, 1]
    assert multiplicity.tolist() == [2, 1, 3]


def test_sample_k_snapshot_sums_to_K():
    counts = sample_k_snapshot(np.array([0.2, 0.3, 0.5]), 7, make_rng(0))
    assert counts.sum() == 7
    assert counts.shape == (3,)


def test_sample_k_snapshot_from_a_vertex_repeats_one_letter():
    counts = sample_k_snapshot(np.array([0.0, 1.0, 0.0]), 5, make_rng(0))
    assert counts.tolist() == [0, 5, 0]


def test_zero_snapshot_has_no_letters():
    counts = sample_k_snapshot(np.array([0.2, 0.8]), 0, make_rng(0))
    assert counts.tolist() == [0, 0]


def test_batch_of_zero_snapshots_is_valid():
    batch = SnapshotBatch.from_dense([[0, 0, 0], [0, 0, 0]], K=0)
    assert len(batch) == 2
    assert batch.K == 0
    assert batch.letter_totals().tolist() == [0, 0, 0]
    with pytest.raises(ValidationError, match="non-negative"):
        SnapshotBatch.empty(3, -1)


@pytest.mark.parametrize("p,K", [(np.array([0.5, 0.6]), 3), (np.array([0.5, 0.5]), -1)])
def test_sample_k_snapshot_contract(p, K):
    with pytest.raises(ContractError):
        sample_k_snapshot(p, K, make_rng(0))


def test_single_spike_batch_draws_only_from_that_spike():
    spec = MixtureSpec.coin([1.0], [1.0])
    batch = draw_batch(spec, 4, 100, make_rng(3))
    np.testing.assert_array_equal(batch.letter_totals(), [0, 400])


def test_draw_batch_with_zero_budget_is_empty(three_coin_spec):
    batch = draw_batch(three_coin_spec, 5, 0, make_rng(0))
    assert len(batch) == 0
    assert batch.K == 5


def test_draw_batch_is_reproducible(three_coin_spec):
    first = draw_batch(three_coin_spec, 8, 500, make_rng(9))
    second = draw_batch(three_coin_spec, 8, 500, make_rng(9))
    np.testing.assert_array_equal(first.to_dense(), second.to_dense())


def test_draw_batch_heads_rate_matches_the_mixture_mean(three_coin_spec):
    batch = draw_batch(three_coin_spec, 10, 20_000, make_rng(4))
    rate = batch.letter_totals()[1] / (10 * 20_000)
    assert rate == pytest.approx(0.53, abs=0.01)


def test_poisson_batch_size():
    assert poisson_batch_size(0.0, make_rng(0)) == 0
    with pytest.raises(ContractError):
        poisson_batch_size(-1.0, make_rng(0))
