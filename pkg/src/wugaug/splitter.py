"""Lemma-disjoint train/dev/test splits and cross-validation folds.

Splitting happens at paradigm granularity: all triples of a lemma land in
the same part, so the three parts never share a lemma. Part sizes follow
the ratio spec with round-half-up on test, then dev, remainder to train.
The shuffle is a Fisher-Yates permutation driven by a seeded PCG64 stream,
so a (paradigms, spec) pair always produces the same split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .corpus import Dataset, Paradigm, Triple
from .rng import make_rng, shuffled


class SplitError(ValueError):
    """Raised when a split cannot satisfy its size or disjointness contract."""


@dataclass(frozen=True)
class SplitSpec:
    """Train/dev/test ratios (exact rationals summing to 1) plus a seed."""

    ratios: tuple[Fraction, Fraction, Fraction] = (
        Fraction(7, 10),
        Fraction(1, 10),
        Fraction(2, 10),
    )
    seed: int = 0

    def __post_init__(self) -> None:
        if len(self.ratios) != 3:
            raise ValueError("exactly three ratios required")
        if any(r < 0 for r in self.ratios):
            raise ValueError("ratios must be non-negative")
        if sum(self.ratios, Fraction(0)) != 1:
            raise ValueError(f"ratios must sum to 1, got {self.ratios}")

    @classmethod
    def from_string(cls, text: str, seed: int = 0) -> "SplitSpec":
        """Parse 'a:b:c' into normalized ratios, e.g. '7:1:2'."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected three ':'-separated ratios, got {text!r}")
        weights = [Fraction(p) for p in parts]
        total = sum(weights, Fraction(0))
        if total <= 0:
            raise ValueError("ratio weights must sum to a positive value")
        r = tuple(w / total for w in weights)
        return cls((r[0], r[1], r[2]), seed)


@dataclass(frozen=True)
class Split:
    train: Dataset
    dev: Dataset
    test: Dataset

    def parts(self) -> tuple[tuple[str, Dataset], ...]:
        return (("train", self.train), ("dev", self.dev), ("test", self.test))


@dataclass(frozen=True)
class DisjointReport:
    """Pairwise lemma intersections between the three parts; all empty means pass."""

    train_dev: frozenset[str]
    train_test: frozenset[str]
    dev_test: frozenset[str]

    @property
    def ok(self) -> bool:
        return not (self.train_dev or self.train_test or self.dev_test)


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def _flatten(paradigms: list[Paradigm], label: str) -> Dataset:
    triples: list[Triple] = []
    for p in paradigms:
        triples.extend(p.triples)
    return Dataset(tuple(triples), label=label)


def part_sizes(n: int, spec: SplitSpec) -> tuple[int, int, int]:
    """(train, dev, test) paradigm counts under the rounding rule."""
    r_train, r_dev, r_test = spec.ratios
    n_test = _round_half_up(r_test * n)
    n_dev = _round_half_up(r_dev * n)
    n_train = n - n_test - n_dev
    if n_train < 0:
        raise SplitError(f"rounded dev+test sizes exceed paradigm count {n}")
    for name, ratio, size in (
        ("train", r_train, n_train),
        ("dev", r_dev, n_dev),
        ("test", r_test, n_test),
    ):
        if ratio > 0 and size == 0:
            raise SplitError(
                f"too few paradigms ({n}) to give the {name} part at least one paradigm"
            )
    return n_train, n_dev, n_test


def wug_split(paradigms: list[Paradigm], spec: SplitSpec) -> Split:
    """Shuffle paradigms by the seed, then cut into train/dev/test.

    The shuffled sequence is consumed in order: the first block becomes
    train, the next dev, the last test. Every triple of a paradigm stays
    with its paradigm, so the parts are lemma-disjoint by construction.
    """
    n_train, n_dev, n_test = part_sizes(len(paradigms), spec)
    order = shuffled(paradigms, make_rng(spec.seed))
    train = order[:n_train]
    dev = order[n_train : n_train + n_dev]
    test = order[n_train + n_dev :]
    return Split(_flatten(train, "train"), _flatten(dev, "dev"), _flatten(test, "test"))


def cv_folds(paradigms: list[Paradigm], k: int, seed: int) -> list[Split]:
    """k cross-validation splits over one seeded shuffle.

    The shuffled paradigms are cut into k blocks whose sizes differ by at
    most one; fold i tests on block i, validates on block i+1 (cyclically)
    and trains on the rest, so every paradigm is a test paradigm exactly
    once and a dev paradigm exactly once.
    """
    if k < 2:
        raise SplitError("cross-validation requires k >= 2")
    n = len(paradigms)
    if n < k:
        raise SplitError(f"cannot make {k} folds from {n} paradigms")
    order = shuffled(paradigms, make_rng(seed))
    base, extra = divmod(n, k)
    blocks: list[list[Paradigm]] = []
    pos = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        blocks.append(order[pos : pos + size])
        pos += size
    folds = []
    for i in range(k):
        dev_i = (i + 1) % k
        train: list[Paradigm] = []
        for b in range(k):
            if b != i and b != dev_i:
                train.extend(blocks[b])
        folds.append(
            Split(
                _flatten(train, "train"),
                _flatten(blocks[dev_i], "dev"),
                _flatten(blocks[i], "test"),
            )
        )
    return folds


def verify_disjoint(s: Split) -> DisjointReport:
    """Report the pairwise lemma intersections of the three parts."""
    train = set(t.lemma for t in s.train)
    dev = set(t.lemma for t in s.dev)
    test = set(t.lemma for t in s.test)
    return DisjointReport(
        frozenset(train & dev), frozenset(train & test), frozenset(dev & test)
    )
