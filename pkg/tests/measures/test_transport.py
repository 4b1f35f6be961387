"""Tests for the transportation distance and its dual certificate."""

import numpy as np
import pytest

from snapmix import DiscreteMeasure, Metric, make_rng, settings_override, transport_distance, transport_distance_1d
from snapmix.errors import ContractError
from snapmix.measures import PiecewiseLinearFunction, dual_certificate_check, transport_plan


def test_opposite_vertices_of_the_simplex_are_two_apart_in_l1():
    P = DiscreteMeasure.point_mass([1.0, 0.0])
    Q = DiscreteMeasure.point_mass([0.0, 1.0])
    assert transport_distance(P, Q, "l1") == pytest.approx(2.0)
    assert transport_distance(P, Q, Metric.L2) == pytest.approx(np.sqrt(2.0))


def test_distance_to_itself_is_zero():
    P = DiscreteMeasure([[0.1], [0.7]], [0.4, 0.6])
    assert transport_distance(P, P) == pytest.approx(0.0, abs=1e-12)


def test_splitting_mass_moves_only_what_must_move():
    P = DiscreteMeasure.point_mass([0.0])
    Q = DiscreteMeasure([[0.0], [1.0]], [0.5, 0.5])
    assert transport_distance(P, Q) == pytest.approx(0.5)


def test_plan_coupling_has_the_right_marginals():
    rng = make_rng(0)
    P = DiscreteMeasure(rng.random((4, 2)), rng.dirichlet(np.ones(4)))
    Q = DiscreteMeasure(rng.random((3, 2)), rng.dirichlet(np.ones(3)))
    result = transport_plan(P, Q, "l2")
    np.testing.assert_allclose(result.coupling.sum(axis=1), P.weights, atol=1e-9)
    np.testing.assert_allclose(result.coupling.sum(axis=0), Q.weights, atol=1e-9)
    assert np.all(result.coupling >= -1e-12)


def test_dual_potentials_attain_the_value():
    rng = make_rng(1)
    P = DiscreteMeasure(rng.random((5, 1)), rng.dirichlet(np.ones(5)))
    Q = DiscreteMeasure(rng.random((4, 1)), rng.dirichlet(np.ones(4)))
    result = transport_plan(P, Q)
    assert result.f @ P.weights + result.g @ Q.weights == pytest.approx(result.value, abs=1e-8)
    cost = np.abs(P.points[:, 0][:, None] - Q.points[:, 0][None, :])
    assert np.all(result.f[:, None] + result.g[None, :] <= cost + 1e-8)


def test_lp_matches_cdf_formula_on_the_line():
    rng = make_rng(2)
    for _ in range(10):
        P = DiscreteMeasure(rng.random((6, 1)), rng.dirichlet(np.ones(6)))
        Q = DiscreteMeasure(rng.random((5, 1)), rng.dirichlet(np.ones(5)))
        assert transport_distance(P, Q) == pytest.approx(transport_distance_1d(P, Q), abs=1e-8)


def test_cdf_formula_on_a_small_example():
    P = DiscreteMeasure([[0.0], [1.0]], [0.5, 0.5])
    Q = DiscreteMeasure.point_mass([0.5])
    assert transport_distance_1d(P, Q) == pytest.approx(0.5)


def test_sub_probability_target_is_rescaled_within_tolerance():
    P = DiscreteMeasure.point_mass([0.0])
    Q = DiscreteMeasure.point_mass([1.0], mass=1.0 - 1e-12)
    assert transport_distance(P, Q) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "P,Q,match",
    [
        (DiscreteMeasure.point_mass([0.0]), DiscreteMeasure.point_mass([0.0, 1.0]), "different dimensions"),
        (DiscreteMeasure.point_mass([0.0]), DiscreteMeasure.point_mass([1.0], mass=0.5), "masses differ"),
    ],
)
def test_transport_contract_violations(P, Q, match):
    with pytest.raises(ContractError, match=match):
        transport_distance(P, Q)


def test_oversized_supports_are_refused():
    P = DiscreteMeasure.uniform(np.arange(5.0))
    with settings_override(max_transport_support=4), pytest.raises(ContractError, match="Support size"):
        transport_distance(P, P)


def test_one_dimensional_formula_needs_one_dimension():
    with pytest.raises(ContractError):
        transport_distance_1d(DiscreteMeasure.point_mass([0.0, 1.0]), DiscreteMeasure.point_mass([1.0, 0.0]))


# ---------------------------------------------------------------------------
# Dual certificates
# ---------------------------------------------------------------------------


def test_identity_witness_certifies_the_shift():
    P = DiscreteMeasure.point_mass([1.0])
    Q = DiscreteMeasure.point_mass([0.0])
    f = PiecewiseLinearFunction(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
    assert f.lipschitz_constant == pytest.approx(1.0)
    assert dual_certificate_check(P, Q, f) == pytest.approx(transport_distance(P, Q))


def test_steep_witness_is_rejected():
    P = DiscreteMeasure.point_mass([1.0])
    Q = DiscreteMeasure.point_mass([0.0])
    f = PiecewiseLinearFunction(np.array([0.0, 1.0]), np.array([0.0, 2.0]))
    with pytest.raises(ContractError, match="1-Lipschitz"):
        dual_certificate_check(P, Q, f)


def test_piecewise_linear_function_needs_increasing_breakpoints():
    with pytest.raises(ValueError, match="strictly increasing"):
        PiecewiseLinearFunction(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
