"""Tests for inscribed ellipsoids, reduced bases and their norm guarantees."""

import numpy as np
import pytest

from snapmix import Basis, DegenerateInputError, PropertyViolationError, build_basis, make_rng, verify_basis
from snapmix.errors import ContractError
from snapmix.lp import solve_lp
from snapmix.subspace import enclosing_symmetric_ellipsoid, exact_A, john_ellipsoid, spectral_truncate
from snapmix.subspace.basis import PROPERTY_SUP_NORM

# ---------------------------------------------------------------------------
# Ellipsoids
# ---------------------------------------------------------------------------


def test_unit_square_contains_the_unit_disk():
    ellipsoid = john_ellipsoid(np.eye(2), 1.0)
    np.testing.assert_allclose(ellipsoid.lengths, [1.0, 1.0], atol=1e-6)


def test_ellipsoid_of_a_segment():
    # the diagonal line of [-1, 1]^2 in its own coordinate
    ellipsoid = john_ellipsoid(np.full((2, 1), 1 / np.sqrt(2)), 1.0)
    assert ellipsoid.lengths[0] == pytest.approx(np.sqrt(2), rel=1e-6)


@pytest.mark.parametrize("seed,dim", [(0, 2), (1, 3), (2, 3)])
def test_ellipsoid_sandwich(seed, dim):
    rng = make_rng(seed)
    constraints = rng.standard_normal((4 * dim, dim))
    ellipsoid = john_ellipsoid(constraints, 1.0)

    # boundary points of E satisfy every constraint
    directions = rng.standard_normal((500, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    boundary = (directions * ellipsoid.lengths) @ ellipsoid.axes.T
    assert np.max(np.abs(boundary @ constraints.T)) <= 1.0 + 1e-8

    # vertices of P lie in sqrt(dim)·E
    A_ub = np.vstack([constraints, -constraints])
    b_ub = np.ones(2 * constraints.shape[0])
    vertices = np.array([
        solve_lp(-rng.standard_normal(dim), A_ub=A_ub, b_ub=b_ub, bounds=(None, None)).x for _ in range(200)
    ])
    assert np.max(ellipsoid.gauge(vertices)) <= dim * (1 + 1e-6)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("dim", [2, 3, 5])
def test_enclosing_ellipsoid_reaches_the_default_gap(seed, dim):
    points = make_rng(seed).standard_normal((4 * dim, dim))
    X, leverages = enclosing_symmetric_ellipsoid(points)
    assert np.max(leverages) <= dim * (1 + 1e-7)
    assert np.linalg.eigvalsh(X).min() > 0


def test_enclosing_ellipsoid_of_a_cross_polytope_is_the_ball():
    points = np.vstack([np.eye(3), np.eye(3)])
    X, leverages = enclosing_symmetric_ellipsoid(points)
    np.testing.assert_allclose(leverages, 3.0, rtol=1e-7)
    np.testing.assert_allclose(X, np.eye(3) / 3, atol=1e-9)


def test_ellipsoid_needs_a_bounded_polytope():
    with pytest.raises(ContractError, match="unbounded"):
        john_ellipsoid(np.array([[1.0, 0.0]]), 1.0)


# ---------------------------------------------------------------------------
# build_basis
# ---------------------------------------------------------------------------


def test_axis_span_gives_the_axis():
    basis = build_basis(np.diag([1.0, 0.0]), C=2.0, epsilon=0.5, n=2, k=1)
    assert basis.h == 1
    np.testing.assert_allclose(np.abs(basis.matrix[:, 0]), [1.0, 0.0], atol=1e-9)
    assert basis.axis_lengths[0] == pytest.approx(1.0, rel=1e-6)
    assert basis.L == pytest.approx(1.0, rel=1e-6)


def test_full_plane_keeps_both_axes():
    basis = build_basis(np.eye(2), C=2.0, epsilon=0.5, n=2, k=2)
    assert basis.h == 2
    np.testing.assert_allclose(basis.matrix.T @ basis.matrix, np.eye(2), atol=1e-9)
    np.testing.assert_allclose(basis.axis_lengths, np.sqrt(2), rtol=1e-6)


def test_diagonal_span_has_length_sqrt_two():
    v = np.array([1.0, 1.0]) / np.sqrt(2)
    basis = build_basis(np.outer(v, v), C=2.0, epsilon=0.5, n=2, k=1)
    assert basis.axis_lengths[0] == pytest.approx(np.sqrt(2), rel=1e-6)
    np.testing.assert_allclose(np.abs(basis.matrix[:, 0]), np.abs(v), atol=1e-9)


def test_short_axes_are_dropped_and_may_leave_nothing():
    with pytest.raises(DegenerateInputError):
        build_basis(np.diag([1.0, 0.0]), C=0.1, epsilon=0.5, n=2, k=1)


@pytest.mark.parametrize("C,epsilon,k", [(0.0, 0.5, 1), (1.0, 1.5, 1), (1.0, 0.5, 0)])
def test_build_basis_contract(C, epsilon, k):
    with pytest.raises(ContractError):
        build_basis(np.eye(2), C=C, epsilon=epsilon, n=2, k=k)


def test_basis_of_a_spike_mixture_is_orthonormal_and_bounded(two_spike_spec):
    n, k, epsilon = 20, 2, 0.5
    cut = spectral_truncate(exact_A(two_spike_spec), k, epsilon, n)
    basis = build_basis(cut.matrix, C=3 * k / epsilon, epsilon=epsilon, n=n, k=k, span=cut.span)
    assert np.max(np.abs(basis.matrix.T @ basis.matrix - np.eye(basis.h))) <= 1e-9
    assert np.max(np.abs(basis.matrix)) <= basis.L * (1 + 1e-9)
    assert basis.L_tight <= basis.L * (1 + 1e-9)
    report = verify_basis(basis, 1000, make_rng(0))
    assert report.passed


# ---------------------------------------------------------------------------
# verify_basis
# ---------------------------------------------------------------------------


def test_coordinate_axis_passes():
    basis = Basis(matrix=np.array([[1.0], [0.0]]), L=1.0)
    report = verify_basis(basis, 100, make_rng(1))
    assert report.passed
    assert report.samples == 100


def test_understated_scale_bound_is_caught():
    basis = Basis(matrix=np.array([[1.0], [0.0]]), L=0.5)
    with pytest.raises(PropertyViolationError) as excinfo:
        verify_basis(basis, 100, make_rng(1))
    assert excinfo.value.property_name == PROPERTY_SUP_NORM
    np.testing.assert_allclose(np.abs(excinfo.value.witness), [1.0, 0.0])
    assert excinfo.value.ratio == pytest.approx(2.0)


def test_violations_can_be_reported_instead_of_raised():
    basis = Basis(matrix=np.array([[1.0], [0.0]]), L=0.5)
    report = verify_basis(basis, 10, make_rng(1), raise_on_violation=False)
    assert not report.passed
    assert report.ratios[PROPERTY_SUP_NORM] == pytest.approx(2.0)


def test_basis_needs_a_positive_scale():
    with pytest.raises(ContractError):
        Basis(matrix=np.eye(2), L=0.0)
