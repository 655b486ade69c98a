"""Training-set augmentation: copy triples and hallucinated inflections.

Five methods are supported:

* ``copy-lemmas``  one (L, COPY, L) triple per supplied lemma
* ``copy-char``    (D, COPY, D) with D sampled character by character
* ``copy-substr``  (D, COPY, D) with D sampled from the 2/3/4-gram inventory
* ``hall-char``    replace every stem span of a real triple with random
                   characters of the same length
* ``hall-substr``  replace only the first stem span with a string sampled
                   from the n-gram inventory, length bounded by the stem
                   lengths seen in training

Generation is a pure function of (inputs, seed): item number i draws from a
PCG64 stream keyed by (seed, i), so the same spec always reproduces the
same triples byte for byte.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Collection, Sequence

import numpy as np

from .align import align, build_template, extract_stem
from .corpus import (
    Alphabet,
    Dataset,
    LengthBounds,
    NGramInventory,
    Triple,
    collect_alphabet,
    collect_ngrams,
    length_bounds,
)
from .rng import make_rng, rand_below

logger = logging.getLogger(__name__)

METHODS = ("copy-lemmas", "copy-char", "copy-substr", "hall-char", "hall-substr")

#: redraws allowed before a duplicate is accepted / a forbidden word is fatal
RETRY_LIMIT = 20

#: total attempts allowed per requested item in the hallucination loop
ATTEMPT_FACTOR = 100


@dataclass(frozen=True)
class AugmentationSpec:
    """Method selector plus everything that determines the generated data."""

    method: str
    count: int = 2000
    seed: int = 0
    copy_tag: str = "COPY"
    dedupe: bool = True

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not self.copy_tag:
            raise ValueError("copy_tag must be non-empty")


@dataclass(frozen=True)
class GenContext:
    """Sampling material harvested from one training set.

    ``ngrams`` is empty and ``stem_bounds`` is None when the training data
    cannot supply them (all words of length one, or no alignable triple);
    the methods that need them raise at generation time.
    """

    alphabet: Alphabet
    ngrams: NGramInventory
    word_bounds: LengthBounds
    stem_bounds: LengthBounds | None
    min_stem_run: int = 1

    @cached_property
    def alphabet_units(self) -> tuple[str, ...]:
        # sorted so sampling never depends on set iteration order
        return tuple(sorted(self.alphabet))

    @cached_property
    def ngram_units(self) -> tuple[str, ...]:
        return tuple(sorted(self.ngrams))


@dataclass(frozen=True)
class GenReport:
    """What one generation run did; recorded in CLI manifests."""

    method: str
    requested: int
    produced: int
    attempts: int
    skipped: int
    duplicates_accepted: int


def build_context(train: Dataset, fields: str = "both", min_stem_run: int = 1) -> GenContext:
    """Harvest alphabet, n-grams and length bounds from a training set.

    Word length bounds come from the training lemmata; stem length bounds
    from the first stem span of every alignable training triple.
    """
    alphabet = collect_alphabet([train], fields)  # raises on an empty corpus
    try:
        ngrams = collect_ngrams([train], fields)
    except ValueError:
        ngrams = frozenset()
    word_bounds = length_bounds([t.lemma for t in train])
    first_span_lengths = []
    for t in train:
        spans = extract_stem(align(t.lemma, t.form), min_stem_run)
        if spans:
            first_span_lengths.append(spans[0].lemma_end - spans[0].lemma_start)
    stem_bounds = (
        LengthBounds(min(first_span_lengths), max(first_span_lengths))
        if first_span_lengths
        else None
    )
    return GenContext(alphabet, ngrams, word_bounds, stem_bounds, min_stem_run)


def synth_word_traced(
    units: Sequence[str], bounds: LengthBounds, rng: np.random.Generator
) -> tuple[str, tuple[str, ...]]:
    """Like synth_word but also returns the units that were concatenated."""
    if not units:
        raise ValueError("empty unit source")
    target = bounds.min + rand_below(rng, bounds.max - bounds.min + 1)
    parts: list[str] = []
    total = 0
    while total < target:
        u = units[rand_below(rng, len(units))]
        parts.append(u)
        total += len(u)
    return "".join(parts)[:target], tuple(parts)


def synth_word(units: Sequence[str], bounds: LengthBounds, rng: np.random.Generator) -> str:
    """Concatenate uniform draws from ``units`` and truncate to a random length.

    The target length is uniform over [bounds.min, bounds.max]; units are
    drawn with replacement until the concatenation reaches it, then cut to
    exactly that length. ``units`` must be in a deterministic order.
    """
    return synth_word_traced(units, bounds, rng)[0]


def gen_copy_lemmas(lemmata: Sequence[str], spec: AugmentationSpec) -> Dataset:
    """One (L, copy_tag, L) triple per lemma, input order preserved.

    ``spec.count`` is ignored; the output size is the number of (distinct,
    when dedupe is on) input lemmata.
    """
    if not lemmata:
        raise ValueError("no lemmata to copy")
    items = list(dict.fromkeys(lemmata)) if spec.dedupe else list(lemmata)
    triples = tuple(Triple(l, (spec.copy_tag,), l) for l in items)
    return Dataset(triples, label=spec.method)


def _copy_dummies(
    ctx: GenContext, spec: AugmentationSpec, forbid: frozenset[str]
) -> tuple[list[Triple], GenReport]:
    units = ctx.alphabet_units if spec.method == "copy-char" else ctx.ngram_units
    if not units:
        raise ValueError("empty n-gram inventory")
    out: list[Triple] = []
    seen: set[str] = set()
    attempts = 0
    duplicates_accepted = 0
    for i in range(spec.count):
        rng = make_rng(spec.seed, i)
        chosen: str | None = None
        duplicate: str | None = None
        for _ in range(RETRY_LIMIT + 1):
            cand = synth_word(units, ctx.word_bounds, rng)
            attempts += 1
            if cand in forbid:
                continue
            if spec.dedupe and cand in seen:
                duplicate = cand
                continue
            chosen = cand
            break
        if chosen is None:
            if duplicate is None:
                raise ValueError(
                    f"could not draw a dummy lemma outside the forbidden set "
                    f"within {RETRY_LIMIT} redraws (item {i})"
                )
            chosen = duplicate
            duplicates_accepted += 1
        seen.add(chosen)
        out.append(Triple(chosen, (spec.copy_tag,), chosen))
    if duplicates_accepted:
        logger.warning(
            "accepted %d duplicate dummies after exhausting redraws", duplicates_accepted
        )
    report = GenReport(spec.method, spec.count, len(out), attempts, 0, duplicates_accepted)
    return out, report


def hallucinate_triple_char(
    t: Triple, ctx: GenContext, rng: np.random.Generator
) -> Triple | None:
    """Replace every stem span with same-length random characters.

    Returns None (skip) when the lemma/form alignment has no stem span.
    Output lemma and form lengths equal the input lengths; tags are kept.
    """
    spans = extract_stem(align(t.lemma, t.form), ctx.min_stem_run)
    if not spans:
        return None
    template = build_template(t.lemma, t.form, spans)
    units = ctx.alphabet_units
    stems = []
    for span in spans:
        size = span.lemma_end - span.lemma_start
        stems.append("".join(units[rand_below(rng, len(units))] for _ in range(size)))
    new_lemma, new_form = template.render(stems)
    return Triple(new_lemma, t.tags, new_form)


def hallucinate_triple_substr(
    t: Triple, ctx: GenContext, rng: np.random.Generator
) -> Triple | None:
    """Replace only the first stem span with an n-gram-sampled string.

    The replacement length is bounded by the stem lengths observed in
    training, not by the span being replaced; later spans and all affix
    material are preserved verbatim. Returns None when there is no stem.
    """
    if ctx.stem_bounds is None:
        raise ValueError("no stem length bounds: training data has no alignable triple")
    if not ctx.ngram_units:
        raise ValueError("empty n-gram inventory")
    spans = extract_stem(align(t.lemma, t.form), ctx.min_stem_run)
    if not spans:
        return None
    template = build_template(t.lemma, t.form, spans)
    dummy = synth_word(ctx.ngram_units, ctx.stem_bounds, rng)
    stems = [dummy] + list(template.stems[1:])
    new_lemma, new_form = template.render(stems)
    return Triple(new_lemma, t.tags, new_form)


def _hallucinated(
    ctx: GenContext,
    spec: AugmentationSpec,
    pool: Dataset,
    forbid: frozenset[str],
) -> tuple[list[Triple], GenReport]:
    if not len(pool):
        raise ValueError("empty source pool for hallucination")
    make_one = hallucinate_triple_char if spec.method == "hall-char" else hallucinate_triple_substr
    out: list[Triple] = []
    seen: set[Triple] = set()
    budget = ATTEMPT_FACTOR * spec.count
    attempt = 0
    skipped = 0
    duplicates_accepted = 0
    dup_streak = 0
    while len(out) < spec.count and attempt < budget:
        rng = make_rng(spec.seed, attempt)
        attempt += 1
        base = pool.triples[rand_below(rng, len(pool.triples))]
        cand = make_one(base, ctx, rng)
        if cand is None or cand.lemma in forbid:
            skipped += 1
            continue
        if spec.dedupe and cand in seen:
            dup_streak += 1
            if dup_streak <= RETRY_LIMIT:
                continue
            duplicates_accepted += 1
        dup_streak = 0
        seen.add(cand)
        out.append(cand)
    if len(out) < spec.count:
        raise ValueError(
            f"hallucination attempt budget exhausted: {len(out)} of {spec.count} "
            f"produced in {attempt} attempts (skip rate {skipped / attempt:.1%})"
        )
    if duplicates_accepted:
        logger.warning(
            "accepted %d duplicate hallucinations after exhausting redraws",
            duplicates_accepted,
        )
    report = GenReport(spec.method, spec.count, len(out), attempt, skipped, duplicates_accepted)
    return out, report


def gen_copy_dummies(ctx: GenContext, spec: AugmentationSpec) -> Dataset:
    """spec.count (D, copy_tag, D) triples with synthesized dummy lemmata."""
    if spec.method not in ("copy-char", "copy-substr"):
        raise ValueError(f"gen_copy_dummies cannot run method {spec.method!r}")
    triples, _ = _copy_dummies(ctx, spec, frozenset())
    return Dataset(tuple(triples), label=spec.method)


def generate(
    spec: AugmentationSpec,
    ctx: GenContext,
    pool: Dataset,
    forbid_lemmas: Collection[str] = (),
) -> tuple[tuple[Triple, ...], GenReport]:
    """Run one augmentation method and return (triples, report).

    ``pool`` supplies the lemmata for copy-lemmas and the base triples for
    the hallucination methods; the dummy-lemma methods ignore it.
    ``forbid_lemmas`` rejects generated lemmata that collide with the given
    set (off by default; the methods do not filter against real words).
    """
    forbid = frozenset(forbid_lemmas)
    if spec.method == "copy-lemmas":
        d = gen_copy_lemmas([t.lemma for t in pool], spec)
        report = GenReport(spec.method, len(pool), len(d), len(pool), 0, 0)
        return d.triples, report
    if spec.method in ("copy-char", "copy-substr"):
        triples, report = _copy_dummies(ctx, spec, forbid)
        return tuple(triples), report
    triples, report = _hallucinated(ctx, spec, pool, forbid)
    return tuple(triples), report


def augment(
    train: Dataset,
    spec: AugmentationSpec,
    ctx: GenContext,
    source_pool: Dataset | None = None,
    forbid_lemmas: Collection[str] = (),
) -> Dataset:
    """Return train followed by the generated triples.

    ``source_pool`` defaults to the training set itself; pass the dev+test
    lemma pool for copy-lemmas.
    """
    pool = source_pool if source_pool is not None else train
    generated, _ = generate(spec, ctx, pool, forbid_lemmas)
    label = f"{train.label}+{spec.method}" if train.label else spec.method
    return Dataset(train.triples + generated, label=label)
