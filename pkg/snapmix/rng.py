"""Seeded, splittable random streams.

Every stochastic operation in snapmix takes an explicit ``numpy.random.Generator``.
``RandomStreams`` derives independent named streams from one seed so that, for
example, data generation never shares randomness with a learner.
"""

import zlib
from typing import List, Optional

import numpy as np


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """Create a PCG64 generator from *seed*."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def split(rng: np.random.Generator, count: int) -> List[np.random.Generator]:
    """Split *rng* into *count* independent child generators.

    The children depend only on the parent's seed sequence and spawn counter,
    so results keyed by child index do not depend on evaluation order.
    """
    return rng.spawn(count)


class RandomStreams:
    """Named independent streams derived from a single root seed.

    Usage:
        streams = RandomStreams(1234)
        gen_rng = streams.stream("generate")
        learn_rng = streams.stream("learn")
    """

    def __init__(self, seed: Optional[int]) -> None:
        self._root = np.random.SeedSequence(seed)
        self.seed = self._root.entropy

    def stream(self, name: str) -> np.random.Generator:
        """Return a fresh generator for *name*; the same name always yields the same stream."""
        key = zlib.crc32(name.encode("utf-8"))
        child = np.random.SeedSequence(entropy=self._root.entropy, spawn_key=(key,))
        return np.random.Generator(np.random.PCG64(child))
