"""Seeded random number generation shared by the splitter and the generators.

All stochastic behaviour in this package flows through PCG64 (numpy's
implementation of O'Neill's permuted congruential generator), keyed by an
explicit 64-bit seed plus an optional stream index. Deriving one generator
per generated item from ``(seed, item_index)`` makes results independent of
how work is scheduled: producing items in parallel and emitting them in
index order gives the same output as a serial loop.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

T = TypeVar("T")


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Return a PCG64 generator keyed by ``seed`` and an optional stream index."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *stream])))


def rand_below(rng: np.random.Generator, n: int) -> int:
    """Uniform integer in [0, n)."""
    if n <= 0:
        raise ValueError("rand_below requires n >= 1")
    return int(rng.integers(n))


def shuffled(items: Sequence[T], rng: np.random.Generator) -> list[T]:
    """Fisher-Yates shuffle driven by the bounded-integer stream of ``rng``.

    Implemented directly on rand_below so the permutation depends only on
    the generator's integer draws, not on library shuffle internals.
    """
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rand_below(rng, i + 1)
        out[i], out[j] = out[j], out[i]
    return out
