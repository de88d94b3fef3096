"""Reproducible random streams.

Every generator takes a :class:`Seed`.  A seed is a pair ``(seed, stream)``
mapped onto numpy's counter-based Philox bit generator through a
``SeedSequence``, so replication ``r`` of an experiment can use
``Seed(seed, r)`` and never overlap with another replication.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Seed:
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < 2**64 and 0 <= self.stream < 2**64):
            raise ValueError("seed and stream must be 64-bit unsigned integers")

    def rng(self, *extra: int) -> np.random.Generator:
        """Fresh generator for this (seed, stream), optionally sub-keyed."""
        ss = np.random.SeedSequence([self.seed, self.stream, *extra])
        return np.random.Generator(np.random.Philox(ss))

    def with_stream(self, stream: int) -> "Seed":
        return Seed(self.seed, stream)


def as_seed(seed) -> Seed:
    if isinstance(seed, Seed):
        return seed
    if seed is None:
        return Seed()
    return Seed(int(seed))
