"""Shared fixtures: seeded generators and the standard test mixtures."""

import numpy as np
import pytest

from snapmix import MixtureKind, MixtureSpec, make_rng


@pytest.fixture
def rng():
    return make_rng(12345)


@pytest.fixture
def three_coin_spec():
    """0.3·δ_0.2 + 0.3·δ_0.5 + 0.4·δ_0.8 on the heads probability."""
    return MixtureSpec.coin([0.2, 0.5, 0.8], [0.3, 0.3, 0.4])


@pytest.fixture
def two_spike_spec():
    """Two well-separated constituents of Δ_20, each uniform on half of the alphabet."""
    n = 20
    first = np.zeros(n)
    first[:10] = 0.1
    second = np.zeros(n)
    second[10:] = 0.1
    return MixtureSpec(
        kind=MixtureKind.KSPIKE,
        n=n,
        k=2,
        spike_points=np.vstack([first, second]),
        spike_weights=np.array([0.5, 0.5]),
    )


@pytest.fixture
def segment_spec():
    """Uniform density on a segment of Δ_20 between two half-alphabet constituents."""
    n = 20
    first = np.zeros(n)
    first[:10] = 0.1
    second = np.zeros(n)
    second[10:] = 0.1
    return MixtureSpec(kind=MixtureKind.CONTINUOUS_SEGMENT, n=n, k=2, vertices=np.vstack([first, second]))
