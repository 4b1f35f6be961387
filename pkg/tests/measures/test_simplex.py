"""Tests for L1 projection onto the simplex and push-forwards."""

import numpy as np
import pytest

from snapmix import DiscreteMeasure, l1_project_to_simplex, push_forward
from snapmix.errors import ContractError
from snapmix.measures import clamp_renormalize, hypercube_mass, l1_distance_to_simplex, project_onto_direction

# ---------------------------------------------------------------------------
# Simplex projection
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "y,expected_x,expected_distance",
    [
        ([0.2, 0.8], [0.2, 0.8], 0.0),
        ([-0.2, 1.0], [0.0, 1.0], 0.2),
        ([0.6, 0.6, 0.0], [0.4, 0.6, 0.0], 0.2),
        ([0.1, 0.1], [0.9, 0.1], 0.8),
        ([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], 1.0),
    ],
)
def test_l1_projection_examples(y, expected_x, expected_distance):
    x, distance = l1_project_to_simplex(np.array(y))
    np.testing.assert_allclose(x, expected_x, atol=1e-12)
    assert distance == pytest.approx(expected_distance)


def test_projection_distance_matches_closed_form():
    rng = np.random.default_rng(0)
    for _ in range(50):
        y = rng.normal(scale=0.5, size=6)
        _, distance = l1_project_to_simplex(y)
        assert distance == pytest.approx(l1_distance_to_simplex(y), abs=1e-12)


def test_projection_rejects_non_finite_input():
    with pytest.raises(ContractError):
        l1_project_to_simplex(np.array([np.nan, 1.0]))


def test_clamp_renormalize():
    np.testing.assert_allclose(clamp_renormalize(np.array([-1.0, 1.0, 3.0])), [0.0, 0.25, 0.75])
    np.testing.assert_allclose(clamp_renormalize(np.array([-1.0, -2.0])), [0.5, 0.5])


# ---------------------------------------------------------------------------
# Push-forwards
# ---------------------------------------------------------------------------


def test_push_forward_by_matrix():
    measure = DiscreteMeasure([[1.0, 0.0], [0.0, 1.0]], [0.5, 0.5])
    image = push_forward(measure, np.array([[1.0, 1.0]]))
    assert image.size == 1
    np.testing.assert_allclose(image.points, [[1.0]])
    assert image.weights[0] == pytest.approx(1.0)


def test_push_forward_by_callable():
    measure = DiscreteMeasure([[0.25], [0.5]], [0.5, 0.5])
    image = push_forward(measure, lambda x: 2 * x)
    np.testing.assert_allclose(np.sort(image.points[:, 0]), [0.5, 1.0])


def test_push_forward_checks_dimension():
    with pytest.raises(ContractError, match="expects dimension"):
        push_forward(DiscreteMeasure.point_mass([1.0, 0.0]), np.eye(3))


def test_project_onto_direction():
    measure = DiscreteMeasure([[0.2, 0.8], [0.6, 0.4]], [0.5, 0.5])
    projected = project_onto_direction(measure, np.array([1.0, -1.0]))
    np.testing.assert_allclose(np.sort(projected.points[:, 0]), [-0.6, 0.2])


def test_hypercube_mass_counts_atoms_inside_the_box():
    measure = DiscreteMeasure([[0.05, 0.0], [0.5, 0.0]], [0.3, 0.7])
    assert hypercube_mass(measure, C=1.0, n=10) == pytest.approx(0.3)
    assert hypercube_mass(measure, C=10.0, n=10) == pytest.approx(1.0)
