"""Tests for letter elimination and isotropic splitting."""

import warnings

import numpy as np
import pytest

from snapmix import DiscreteMeasure, SnapshotBatch, ValidationError, make_rng
from snapmix.errors import ContractError
from snapmix.subspace import IsotropyMap, apply_isotropy, build_isotropy_map, estimate_r, invert_isotropy

# ---------------------------------------------------------------------------
# Marginal estimate and map construction
# ---------------------------------------------------------------------------


def test_estimate_r_of_a_single_letter():
    batch = SnapshotBatch.from_dense([[1, 0, 0]] * 5)
    with pytest.warns(UserWarning, match="recommended"):
        r = estimate_r(batch, 0.1)
    np.testing.assert_allclose(r, [1, 0, 0])


def test_estimate_r_needs_samples():
    with pytest.raises(ContractError):
        estimate_r(SnapshotBatch.empty(n=3, K=1), 0.1)


def test_even_marginal_splits_evenly():
    isotropy = build_isotropy_map(np.array([0.5, 0.5]), 2, 0.1)
    assert isotropy.copies.tolist() == [10, 10]
    assert isotropy.n_prime == 20
    assert isotropy.eliminated == ()


def test_rare_letter_is_eliminated():
    isotropy = build_isotropy_map(np.array([0.95, 0.05]), 2, 0.2)
    assert isotropy.copies.tolist() == [9, 0]
    assert isotropy.eliminated == (1,)


def test_surviving_copies_have_comparable_mass():
    r = np.array([0.4, 0.3, 0.2, 0.1])
    isotropy = build_isotropy_map(r, 4, 0.05)
    per_copy = isotropy.isotropic_marginal(r)
    n_prime = isotropy.n_prime
    assert np.all(per_copy >= 1 / (2 * n_prime))
    assert np.all(per_copy <= 2 / n_prime)


@pytest.mark.parametrize("sigma", [0.0, 1.0])
def test_sigma_must_lie_in_the_unit_interval(sigma):
    with pytest.raises(ContractError):
        build_isotropy_map(np.array([0.5, 0.5]), 2, sigma)


def test_eliminating_everything_is_refused():
    with pytest.raises(ContractError, match="Every letter"):
        build_isotropy_map(np.array([0.5, 0.5]), 2, 0.6)


def test_copy_counts_must_not_all_be_zero():
    with warnings.catch_warnings():
        warnings.simplefilter("error", RuntimeWarning)
        with pytest.raises(ValidationError, match="positive entry"):
            IsotropyMap.from_copies(np.array([0, 0]))


# ---------------------------------------------------------------------------
# Applying the map to samples
# ---------------------------------------------------------------------------


def test_identity_map_keeps_the_batch():
    batch = SnapshotBatch.from_dense([[2, 0, 1], [0, 3, 0]])
    mapped = apply_isotropy(batch, IsotropyMap.identity(3), make_rng(0))
    np.testing.assert_array_equal(mapped.to_dense(), batch.to_dense())
    assert mapped.provenance["dropped"] == 0


def test_snapshots_with_eliminated_letters_are_dropped():
    batch = SnapshotBatch.from_dense([[2, 0], [1, 1], [0, 2]])
    mapped = apply_isotropy(batch, IsotropyMap.from_copies(np.array([3, 0])), make_rng(0))
    assert len(mapped) == 1
    assert mapped.n == 3
    assert mapped.provenance["dropped"] == 2
    assert mapped.to_dense().sum() == 2


def test_copies_are_chosen_uniformly():
    batch = SnapshotBatch.from_dense(np.full((20_000, 1), 2))
    mapped = apply_isotropy(batch, IsotropyMap.from_copies(np.array([4])), make_rng(1))
    dense = mapped.to_dense()
    both_in_first_copy = np.mean(dense[:, 0] == 2)
    assert both_in_first_copy == pytest.approx(1 / 16, abs=0.01)
    np.testing.assert_allclose(dense.sum(axis=0) / dense.sum(), 0.25, atol=0.01)


def test_batch_alphabet_must_match():
    with pytest.raises(ContractError):
        apply_isotropy(SnapshotBatch.from_dense([[1, 0]]), IsotropyMap.identity(3), make_rng(0))


# ---------------------------------------------------------------------------
# Inverting the map
# ---------------------------------------------------------------------------


def test_split_then_invert_is_the_identity():
    isotropy = build_isotropy_map(np.array([0.5, 0.3, 0.2]), 3, 0.05)
    measure = DiscreteMeasure([[0.2, 0.3, 0.5], [0.6, 0.4, 0.0]], [0.5, 0.5])
    back = invert_isotropy(isotropy.split_measure(measure), isotropy)
    np.testing.assert_allclose(back.points, measure.points, atol=1e-12)
    assert back.total_mass == pytest.approx(1.0, abs=1e-12)


def test_eliminated_letters_come_back_as_zero():
    isotropy = IsotropyMap.from_copies(np.array([2, 0, 1]))
    measure = DiscreteMeasure.point_mass([0.25, 0.25, 0.5])
    back = invert_isotropy(measure, isotropy)
    np.testing.assert_allclose(back.points[0], [0.5, 0.0, 0.5])


def test_invert_checks_the_dimension():
    with pytest.raises(ContractError):
        invert_isotropy(DiscreteMeasure.point_mass([1.0, 0.0]), IsotropyMap.from_copies(np.array([2, 1])))
