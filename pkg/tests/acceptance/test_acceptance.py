"""Desk-scale reproductions of the learners' guarantees.

Every test here draws large batches and is marked ``slow``; run them with
``pytest -m slow``.
"""

import math

import numpy as np
import pytest

from snapmix import (
    Basis,
    DiscreteMeasure,
    ExperimentConfig,
    MixtureSpec,
    build_basis,
    draw_batch,
    empirical_fq,
    exact_fq,
    make_rng,
    reconstruct_naive,
    run_experiment,
    sweep,
    transport_distance_1d,
    verify_basis,
)
from snapmix.harness import PipelineInputs, draw_data
from snapmix.lp import solve_lp
from snapmix.subspace import IsotropyMap, invert_isotropy, john_ellipsoid

pytestmark = pytest.mark.slow

SEEDS = range(5)


def _slope(xs, ys):
    return np.polyfit(np.log(xs), np.log(ys), 1)[0]


# ---------------------------------------------------------------------------
# Coin problem
# ---------------------------------------------------------------------------


def test_naive_coin_rate(three_coin_spec):
    truth = three_coin_spec.heads_measure()
    Ks = (16, 64, 256)
    medians = []
    for K in Ks:
        errors = []
        for seed in SEEDS:
            batch = draw_batch(three_coin_spec, K, 100_000, make_rng(seed))
            errors.append(transport_distance_1d(reconstruct_naive(empirical_fq(batch, K)).measure, truth))
        medians.append(np.median(errors))
    assert medians[0] > medians[1] > medians[2]
    assert _slope(Ks, medians) <= -0.35


def test_frequency_concentration(three_coin_spec):
    K, kappa, delta = 8, 0.02, 0.05
    N = math.ceil(math.log(K / delta) / kappa**2)
    exact = exact_fq(three_coin_spec.heads_measure(), K).values
    rng = make_rng(99)
    hits = sum(
        np.max(np.abs(empirical_fq(draw_batch(three_coin_spec, K, N, rng), K).values - exact)) <= kappa
        for _ in range(100)
    )
    assert hits >= 95


def test_coin_general_run_on_a_fair_coin():
    spec = MixtureSpec.coin([0.5], [1.0])
    config = ExperimentConfig(pipeline="coin-general", K=64, N1=1, N2=1, NK=100_000)
    data = draw_data(spec, config.budgets, config.K, seed=0)
    report = run_experiment(config, PipelineInputs(data.batch1, data.batch2, data.batchK, truth=data.truth)).report
    assert report.tran1 <= 0.15


def test_coin_general_sweep_over_K(three_coin_spec):
    template = ExperimentConfig(pipeline="coin-general", N1=1, N2=1, NK=100_000)
    rows = sweep(template, three_coin_spec, "K", [16, 64, 256])
    assert [row.value for row in rows] == [16.0, 64.0, 256.0]
    assert all(row.error == "" for row in rows)


# ---------------------------------------------------------------------------
# Ellipsoids and bases
# ---------------------------------------------------------------------------


def _random_span(rng, n, h):
    matrix, _ = np.linalg.qr(rng.standard_normal((n, h)))
    return matrix


@pytest.mark.parametrize("n", [5, 20, 50])
@pytest.mark.parametrize("h", [1, 2, 3])
def test_ellipsoid_sandwich_on_random_subspaces(n, h):
    rng = make_rng(n * 10 + h)
    span = _random_span(rng, n, h)
    bound = 1.0 / n
    ellipsoid = john_ellipsoid(span, bound)

    directions = rng.standard_normal((1000, h))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    boundary = (directions * ellipsoid.lengths) @ ellipsoid.axes.T
    assert np.max(np.abs(boundary @ span.T)) <= bound * (1 + 1e-8)

    A_ub = np.vstack([span, -span])
    b_ub = np.full(2 * n, bound)
    vertices = np.array(
        [solve_lp(-rng.standard_normal(h), A_ub=A_ub, b_ub=b_ub, bounds=(None, None)).x for _ in range(100)]
    )
    assert np.max(ellipsoid.gauge(vertices)) <= h * (1 + 1e-6)


@pytest.mark.parametrize("n", [5, 20, 50])
@pytest.mark.parametrize("h", [1, 2, 3])
def test_basis_properties_on_random_subspaces(n, h):
    rng = make_rng(n * 10 + h)
    span = _random_span(rng, n, h)
    basis = build_basis(span @ span.T, C=float(n), epsilon=0.5, n=n, k=h, span=span)
    assert isinstance(basis, Basis)
    assert basis.h == h
    report = verify_basis(basis, 1000, make_rng(h), raise_on_violation=False)
    assert report.passed


# ---------------------------------------------------------------------------
# End-to-end learners
# ---------------------------------------------------------------------------


def test_kspike_recovers_two_separated_spikes(two_spike_spec):
    spikes = two_spike_spec.spike_points
    assert np.abs(spikes[0] - spikes[1]).sum() >= 0.8
    template = ExperimentConfig(
        pipeline="kspike", n=20, k=2, K=3, epsilon=0.5, sigma=0.1, N1=100_000, N2=1_000_000, NK=1_000_000
    )
    distances = []
    for seed in SEEDS:
        config = template.replace(seed=seed)
        data = draw_data(two_spike_spec, config.budgets, config.K, seed)
        inputs = PipelineInputs(data.batch1, data.batch2, data.batchK, truth=data.truth, spec=two_spike_spec)
        report = run_experiment(config, inputs).report
        assert report.tran1 <= report.trivial_tran1
        assert report.diagnostics["basis_ratios"]
        distances.append(report.tran1)
    assert np.median(distances) <= 0.3


def test_kdim_error_trend_on_a_segment(segment_spec):
    template = ExperimentConfig(
        pipeline="kdim", n=20, k=2, epsilon=0.5, sigma=0.1, N1=100_000, N2=100_000, NK=2000, known_A=True
    )
    medians = []
    for K in (32, 128, 512):
        errors = []
        for seed in SEEDS:
            config = template.replace(K=K, seed=seed)
            data = draw_data(segment_spec, config.budgets, K, seed)
            inputs = PipelineInputs(data.batch1, data.batch2, data.batchK, truth=data.truth, spec=segment_spec)
            errors.append(run_experiment(config, inputs).report.diagnostics["tran2_projected"])
        medians.append(np.median(errors))
    assert medians[0] > medians[1] > medians[2]


def test_isotropy_round_trip_for_point_measures(two_spike_spec):
    isotropy = IsotropyMap.from_copies(np.arange(1, 21) % 3 + 1)
    truth = two_spike_spec.to_measure()
    back = invert_isotropy(isotropy.split_measure(truth), isotropy)
    np.testing.assert_array_equal(back.weights, truth.weights)
    np.testing.assert_allclose(back.points, truth.points, atol=1e-15)
    assert abs(back.total_mass - 1.0) <= 1e-12
    assert isinstance(back, DiscreteMeasure)
