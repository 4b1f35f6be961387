"""Experiment configuration."""

import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Any, Dict, Optional

from ..coin.kspike import DEFAULT_SLACK_CONSTANT
from ..errors import ContractError
from ..kspike import KSpikeConfig
from ..kspike.directions import DEFAULT_DIRECTION_CAP
from ..kspike.lp2 import DEFAULT_LP2_SLACK_CONSTANT
from ..kspike.net import DEFAULT_NET_CAP

# Failure probability used when quoting the frequency-concentration budget.
RECOMMENDED_DELTA = 0.05
# C = KDIM_HYPERCUBE_FACTOR·k²/ε for the k-dimensional learner.
KDIM_HYPERCUBE_FACTOR = 5.0


class Pipeline(Enum):
    """Learners the harness can run."""

    COIN_GENERAL = "coin-general"
    COIN_KSPIKE = "coin-kspike"
    KDIM = "kdim"
    KSPIKE = "kspike"

    @property
    def is_coin(self) -> bool:
        return self in (Pipeline.COIN_GENERAL, Pipeline.COIN_KSPIKE)


@dataclass(frozen=True)
class Budgets:
    """Numbers of 1-, 2- and K-snapshots to draw. Zero budgets produce empty batches."""

    N1: int = 0
    N2: int = 0
    NK: int = 0

    def __post_init__(self) -> None:
        if min(self.N1, self.N2, self.NK) < 0:
            raise ContractError(f"Budgets must be non-negative, got {self}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one run.

    Defaults target desk-scale problems (n ≤ 50, k ≤ 3). ``known_A`` feeds
    the exact second moment of the ground truth to the reduction instead of
    estimating it from the 2-snapshots.
    """

    pipeline: Pipeline
    n: int = 2
    k: int = 1
    K: int = 16
    epsilon: float = 0.5
    N1: int = 100_000
    N2: int = 100_000
    NK: int = 100_000
    tau: float = 1.0 / 16
    eps_prime: float = 0.05
    eps_2: Optional[float] = None
    R: int = 4
    C: Optional[float] = None
    sigma: float = 0.1
    seed: int = 0
    slack_constant: float = DEFAULT_SLACK_CONSTANT
    lp2_slack_constant: float = DEFAULT_LP2_SLACK_CONSTANT
    net_cap: int = DEFAULT_NET_CAP
    direction_cap: int = DEFAULT_DIRECTION_CAP
    eval_support: int = 400
    poissonize: bool = False
    known_A: bool = False
    full_enumeration: Optional[bool] = None
    subsample_directions: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "pipeline", Pipeline(self.pipeline))
        if self.n < 1 or self.k < 1 or self.K < 1:
            raise ContractError(f"n, k and K must be positive, got n={self.n}, k={self.k}, K={self.K}")
        if self.pipeline.is_coin and self.n != 2:
            raise ContractError(f"Coin pipelines need n=2, got n={self.n}")
        if min(self.N1, self.N2, self.NK) < 0:
            raise ContractError(f"Sample budgets must be non-negative, got N1={self.N1}, N2={self.N2}, NK={self.NK}")
        if not 0 < self.epsilon < 1:
            raise ContractError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.pipeline.is_coin and not 0 < self.sigma < self.epsilon / 4:
            raise ContractError(f"sigma must lie in (0, epsilon/4), got sigma={self.sigma}, epsilon={self.epsilon}")
        if not 0 < self.tau <= 1 or not 0 < self.eps_prime < 1:
            raise ContractError(f"tau and eps_prime must lie in (0, 1), got {self.tau}, {self.eps_prime}")
        if self.eval_support < 2:
            raise ContractError(f"eval_support must be at least 2, got {self.eval_support}")

    @property
    def budgets(self) -> Budgets:
        return Budgets(N1=self.N1, N2=self.N2, NK=self.NK)

    @property
    def hypercube_constant(self) -> float:
        """``C`` if set, else 5k²/ε for the k-dim learner and 3k/ε otherwise."""
        if self.C is not None:
            return self.C
        if self.pipeline is Pipeline.KDIM:
            return kdim_hypercube_constant(self.k, self.epsilon)
        return self.to_kspike_config().hypercube_constant

    def replace(self, **changes: Any) -> "ExperimentConfig":
        return replace(self, **changes)

    def to_kspike_config(self) -> KSpikeConfig:
        return KSpikeConfig(
            k=self.k,
            epsilon=self.epsilon,
            sigma=self.sigma,
            tau=self.tau,
            R=self.R,
            C=self.C,
            epsilon2=self.eps_2,
            coin_K=self.K,
            slack_constant=self.slack_constant,
            lp2_slack_constant=self.lp2_slack_constant,
            full_enumeration=self.full_enumeration,
            direction_cap=self.direction_cap,
            subsample_directions=self.subsample_directions,
            net_cap=self.net_cap,
            poissonize=self.poissonize,
        )

    def recommended_budgets(self) -> Dict[str, float]:
        """Asymptotic budgets from the analysis, with every hidden constant set to 1.

        They are reported for comparison and never enforced.
        """
        return recommended_budgets(self)


def kdim_hypercube_constant(k: int, epsilon: float) -> float:
    return KDIM_HYPERCUBE_FACTOR * k**2 / epsilon


NUMERIC_FIELDS = tuple(
    f.name for f in fields(ExperimentConfig) if f.type in (int, float, Optional[float]) and f.name != "seed"
)
INTEGER_FIELDS = tuple(f.name for f in fields(ExperimentConfig) if f.type is int)


def coerce_axis_value(axis: str, value: float) -> Any:
    """Cast a sweep value to the type of the config field it replaces."""
    if axis not in NUMERIC_FIELDS:
        raise ContractError(f"'{axis}' is not a numeric config field; expected one of {NUMERIC_FIELDS}")
    if axis in INTEGER_FIELDS:
        if float(value) != int(value):
            raise ContractError(f"'{axis}' takes integer values, got {value}")
        return int(value)
    return float(value)


def recommended_budgets(config: ExperimentConfig) -> Dict[str, float]:
    eps, k, n = config.epsilon, config.k, config.n
    h = k
    concentration = math.log(config.K / RECOMMENDED_DELTA)
    budgets: Dict[str, float] = {}
    if config.pipeline is Pipeline.COIN_GENERAL:
        budgets["K"] = 1.0 / eps
        budgets["NK"] = concentration / config.eps_prime**2
    elif config.pipeline is Pipeline.COIN_KSPIKE:
        budgets["K"] = 2.0 * k - 1
        budgets["NK"] = concentration / config.tau**2
    else:
        C = k**2 / eps if config.pipeline is Pipeline.KDIM else k / eps
        eps1 = eps**2 / (math.sqrt(k) * C)
        budgets["C"] = C
        budgets["L"] = math.sqrt(k / n) * C / eps
        budgets["N1"] = n * math.log(max(n, 2)) / config.sigma**3
        if config.pipeline is Pipeline.KDIM:
            eps2 = (eps / k) ** 5
            budgets["eps_2"] = eps2
            budgets["K"] = h / eps2**2 * math.log(h / eps2)
            budgets["NK"] = (1.0 / eps2) ** h
        else:
            budgets["K"] = 2.0 * k + 1
            budgets["R"] = h / eps1
    return budgets
