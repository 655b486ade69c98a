"""Exact-match scoring, run aggregation and a suffix-rule baseline inflector.

The baseline is a deliberately simple longest-suffix rewriter so the whole
pipeline can run end to end at desk scale; its reports are labeled
"baseline" and make no claim about neural model accuracy.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .align import align, extract_stem
from .corpus import Dataset, Triple


class Prediction(NamedTuple):
    lemma: str
    tags: tuple[str, ...]
    predicted_form: str


def tagset_key(tags: Sequence[str]) -> str:
    """Order-insensitive key for a tag set."""
    return ";".join(sorted(tags))


@dataclass(frozen=True)
class EvalReport:
    n: int
    correct: int
    accuracy: float
    per_tagset: dict[str, tuple[int, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class AggregateReport:
    mean: float
    std: float
    values: tuple[float, ...]


def predictions_from_dataset(d: Dataset) -> list[Prediction]:
    """Interpret a 3-column TSV dataset (lemma, predicted form, tags) as predictions."""
    return [Prediction(t.lemma, t.tags, t.form) for t in d.triples]


def predictions_to_dataset(preds: Sequence[Prediction], label: str = "") -> Dataset:
    return Dataset(
        tuple(Triple(p.lemma, p.tags, p.predicted_form) for p in preds), label=label
    )


def score(gold: Dataset, preds: Sequence[Prediction]) -> EvalReport:
    """Exact code-point match of predicted vs gold forms, index-aligned."""
    if len(preds) != len(gold):
        raise ValueError(f"{len(preds)} predictions for {len(gold)} gold triples")
    if not len(gold):
        raise ValueError("cannot score an empty dataset")
    correct = 0
    per_tagset: dict[str, list[int]] = {}
    for t, p in zip(gold.triples, preds):
        key = tagset_key(t.tags)
        bucket = per_tagset.setdefault(key, [0, 0])
        bucket[0] += 1
        if p.predicted_form == t.form:
            bucket[1] += 1
            correct += 1
    return EvalReport(
        n=len(gold),
        correct=correct,
        accuracy=correct / len(gold),
        per_tagset={k: (v[0], v[1]) for k, v in sorted(per_tagset.items())},
    )


def aggregate(values: Sequence[float], population: bool = False) -> AggregateReport:
    """Mean and standard deviation over per-run accuracies.

    Sample (n-1) standard deviation by default, population on request; a
    single value has std 0 by convention.
    """
    if not values:
        raise ValueError("cannot aggregate an empty value list")
    vals = tuple(float(v) for v in values)
    mean = statistics.mean(vals)
    if len(vals) == 1:
        std = 0.0
    elif population:
        std = statistics.pstdev(vals)
    else:
        std = statistics.stdev(vals)
    return AggregateReport(mean, std, vals)


@dataclass
class RuleModel:
    """(tag-set key, lemma suffix) -> {form suffix: count} rewrite table."""

    rules: dict[tuple[str, str], dict[str, int]] = field(default_factory=dict)

    def add(self, key: str, lemma_suffix: str, form_suffix: str) -> None:
        counts = self.rules.setdefault((key, lemma_suffix), {})
        counts[form_suffix] = counts.get(form_suffix, 0) + 1


def train_rules(train: Dataset, min_stem_run: int = 1) -> RuleModel:
    """Harvest suffix rewrite rules from every alignable training triple.

    For each triple the split point walks the last stem span from its start
    to its end; the lemma suffix right of the split maps to the form
    material right of the corresponding form position. Triples with no stem
    span contribute nothing (the identity fallback covers them).
    """
    if not len(train):
        raise ValueError("cannot train rules on an empty dataset")
    model = RuleModel()
    for t in train:
        spans = extract_stem(align(t.lemma, t.form), min_stem_run)
        if not spans:
            continue
        last = spans[-1]
        key = tagset_key(t.tags)
        for p in range(last.lemma_start, last.lemma_end + 1):
            form_pos = last.form_start + (p - last.lemma_start)
            model.add(key, t.lemma[p:], t.form[form_pos:])
    return model


def predict(model: RuleModel, lemma: str, tags: Sequence[str]) -> str:
    """Apply the longest matching suffix rule; fall back to the identity.

    Rules for the longest lemma suffix win; among their rewrites, higher
    observation count wins, then the lexicographically smallest output.
    """
    key = tagset_key(tags)
    for size in range(len(lemma), -1, -1):
        suffix = lemma[len(lemma) - size :] if size else ""
        counts = model.rules.get((key, suffix))
        if counts:
            best = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
            return lemma[: len(lemma) - size] + best
    return lemma


def predict_dataset(model: RuleModel, items: Dataset) -> list[Prediction]:
    """Predict a form for every (lemma, tags) pair of a dataset."""
    return [Prediction(t.lemma, t.tags, predict(model, t.lemma, t.tags)) for t in items]


def format_report(report: EvalReport, label: str = "baseline") -> str:
    lines = [
        f"{label}: {report.correct}/{report.n} correct, accuracy {report.accuracy:.4f}"
    ]
    for key, (n, correct) in report.per_tagset.items():
        lines.append(f"  {key}: {correct}/{n}")
    return "\n".join(lines) + "\n"


def format_report_kv(report: EvalReport, label: str = "baseline") -> str:
    lines = [
        f"{label}.n={report.n}",
        f"{label}.correct={report.correct}",
        f"{label}.accuracy={report.accuracy:.6f}",
    ]
    for key, (n, correct) in report.per_tagset.items():
        lines.append(f"{label}.tagset.{key}.n={n}")
        lines.append(f"{label}.tagset.{key}.correct={correct}")
    return "\n".join(lines) + "\n"


def format_aggregate(agg: AggregateReport, label: str = "runs") -> str:
    return (
        f"{label}: mean accuracy {agg.mean:.4f} (std {agg.std:.4f} over {len(agg.values)} runs)\n"
    )
