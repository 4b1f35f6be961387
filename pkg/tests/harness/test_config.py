import math

import pytest

from snapmix import Budgets, ExperimentConfig, Pipeline
from snapmix.errors import ContractError
from snapmix.harness.config import RECOMMENDED_DELTA, coerce_axis_value

# ---------------------------------------------------------------------------
# Budgets and validation
# ---------------------------------------------------------------------------


def test_zero_budgets_are_allowed():
    assert Budgets() == Budgets(N1=0, N2=0, NK=0)


def test_negative_budgets_are_rejected():
    with pytest.raises(ContractError, match="non-negative"):
        Budgets(N1=-1)


def test_pipeline_is_coerced_from_its_name():
    config = ExperimentConfig(pipeline="kdim", n=5)
    assert config.pipeline is Pipeline.KDIM
    assert not config.pipeline.is_coin
    assert Pipeline.COIN_KSPIKE.is_coin


def test_budgets_property():
    config = ExperimentConfig(pipeline=Pipeline.COIN_GENERAL, N1=1, N2=2, NK=3)
    assert config.budgets == Budgets(N1=1, N2=2, NK=3)


@pytest.mark.parametrize(
    "changes,match",
    [
        ({"pipeline": "coin-general", "n": 3}, "n=2"),
        ({"pipeline": "kdim", "n": 0}, "positive"),
        ({"pipeline": "kdim", "NK": -1}, "non-negative"),
        ({"pipeline": "kdim", "epsilon": 1.0}, "epsilon"),
        ({"pipeline": "kdim", "sigma": 0.2}, "sigma"),
        ({"pipeline": "coin-kspike", "tau": 0.0}, "tau"),
        ({"pipeline": "coin-general", "eps_prime": 1.0}, "eps_prime"),
        ({"pipeline": "kdim", "eval_support": 1}, "eval_support"),
    ],
)
def test_invalid_configs_are_rejected(changes, match):
    with pytest.raises(ContractError, match=match):
        ExperimentConfig(**changes)


def test_coin_pipelines_ignore_sigma():
    config = ExperimentConfig(pipeline="coin-general", epsilon=0.25, sigma=0.1)
    assert config.sigma == 0.1
    with pytest.raises(ContractError, match="sigma"):
        ExperimentConfig(pipeline="kspike", n=5, epsilon=0.25, sigma=0.1)


def test_zero_budgets_are_accepted():
    config = ExperimentConfig(pipeline="kdim", n=5, N1=0, N2=0, NK=0)
    assert config.budgets == Budgets()


def test_replace_validates_again():
    config = ExperimentConfig(pipeline="coin-general")
    assert config.replace(K=32).K == 32
    with pytest.raises(ContractError):
        config.replace(n=5)


def test_kspike_config_carries_the_learner_fields():
    config = ExperimentConfig(pipeline="kspike", n=10, k=2, K=3, epsilon=0.5, sigma=0.1, R=2, C=9.0, eps_2=0.05)
    kspike = config.to_kspike_config()
    assert (kspike.k, kspike.epsilon, kspike.sigma, kspike.R) == (2, 0.5, 0.1, 2)
    assert kspike.direction_K == 3
    assert kspike.hypercube_constant == 9.0
    assert kspike.epsilon2 == 0.05


# ---------------------------------------------------------------------------
# Recommended budgets
# ---------------------------------------------------------------------------


def test_coin_general_budgets():
    config = ExperimentConfig(pipeline="coin-general", K=16, epsilon=0.25, eps_prime=0.05)
    budgets = config.recommended_budgets()
    assert budgets["K"] == pytest.approx(4.0)
    assert budgets["NK"] == pytest.approx(math.log(16 / RECOMMENDED_DELTA) / 0.05**2)


def test_coin_kspike_budgets():
    budgets = ExperimentConfig(pipeline="coin-kspike", k=3, K=5).recommended_budgets()
    assert budgets["K"] == 5
    assert set(budgets) == {"K", "NK"}


def test_kdim_budgets():
    budgets = ExperimentConfig(pipeline="kdim", n=20, k=2, epsilon=0.5, sigma=0.1).recommended_budgets()
    assert budgets["C"] == pytest.approx(8.0)
    assert budgets["eps_2"] == pytest.approx(0.25**5)
    assert {"L", "N1", "K", "NK"} <= set(budgets)


def test_kspike_budgets():
    budgets = ExperimentConfig(pipeline="kspike", n=20, k=2, epsilon=0.5, sigma=0.1).recommended_budgets()
    assert budgets["C"] == pytest.approx(4.0)
    assert budgets["K"] == 5
    assert budgets["R"] > 0


# ---------------------------------------------------------------------------
# Sweep axes
# ---------------------------------------------------------------------------


def test_integer_axes_take_integers():
    assert coerce_axis_value("K", 32.0) == 32
    assert isinstance(coerce_axis_value("K", 32.0), int)
    with pytest.raises(ContractError, match="integer"):
        coerce_axis_value("K", 2.5)


def test_float_axes_take_floats():
    assert coerce_axis_value("epsilon", 1) == 1.0
    assert coerce_axis_value("eps_2", 0.1) == 0.1


@pytest.mark.parametrize("axis", ["pipeline", "seed", "known_A", "missing"])
def test_non_numeric_axes_are_rejected(axis):
    with pytest.raises(ContractError, match="not a numeric config field"):
        coerce_axis_value(axis, 1)


def test_hypercube_constant_defaults_per_pipeline():
    assert ExperimentConfig(pipeline="kdim", n=20, k=2, epsilon=0.5).hypercube_constant == pytest.approx(40.0)
    assert ExperimentConfig(pipeline="kspike", n=20, k=2, epsilon=0.5).hypercube_constant == pytest.approx(12.0)
    assert ExperimentConfig(pipeline="kdim", n=20, C=3.0).hypercube_constant == 3.0
