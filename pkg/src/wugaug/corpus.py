"""Inflection datasets: parsing, serialization, statistics and harvesting.

The on-disk format is a headerless UTF-8 TSV with three columns per line,
``lemma<TAB>form<TAB>tag;tag;...`` and ``\\n`` line endings, the layout used
by the inflection shared tasks. Everything here treats strings as sequences
of Unicode code points; no normalization is applied unless requested at
ingestion time.
"""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Iterator, Literal, Sequence

logger = logging.getLogger(__name__)

#: substring lengths harvested into the n-gram inventory
NGRAM_SIZES = (2, 3, 4)

FieldSelector = Literal["lemma", "form", "both"]

#: set of code points occurring in a corpus
Alphabet = frozenset[str]

#: set of length-2/3/4 substrings occurring in a corpus
NGramInventory = frozenset[str]


class ParseError(ValueError):
    """Raised for malformed TSV input in strict mode."""


_FORBIDDEN_FIELD_CHARS = "\t\n\r"


@dataclass(frozen=True)
class Triple:
    """One (lemma, tags, form) inflection example."""

    lemma: str
    tags: tuple[str, ...]
    form: str

    def __post_init__(self) -> None:
        if not self.lemma:
            raise ValueError("empty lemma")
        if not self.form:
            raise ValueError("empty form")
        if not self.tags:
            raise ValueError("empty tag list")
        for name, value in (("lemma", self.lemma), ("form", self.form)):
            if any(c in value for c in _FORBIDDEN_FIELD_CHARS):
                raise ValueError(f"{name} contains tab or newline: {value!r}")
        for tag in self.tags:
            if not tag:
                raise ValueError("empty tag")
            if any(c in tag for c in _FORBIDDEN_FIELD_CHARS + ";"):
                raise ValueError(f"tag contains separator or newline: {tag!r}")

    @property
    def tag_string(self) -> str:
        return ";".join(self.tags)


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of triples, order preserved exactly as read."""

    triples: tuple[Triple, ...] = ()
    label: str = ""

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def lemmata(self) -> list[str]:
        """Distinct lemmata in first-appearance order."""
        return list(dict.fromkeys(t.lemma for t in self.triples))


@dataclass(frozen=True)
class Paradigm:
    """All triples sharing one lemma."""

    lemma: str
    triples: tuple[Triple, ...]

    def __post_init__(self) -> None:
        if not self.triples:
            raise ValueError("paradigm with no triples")
        for t in self.triples:
            if t.lemma != self.lemma:
                raise ValueError(
                    f"triple lemma {t.lemma!r} does not match paradigm lemma {self.lemma!r}"
                )

    def __len__(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class LengthBounds:
    """Inclusive code-point length range."""

    min: int
    max: int

    def __post_init__(self) -> None:
        if self.min < 1:
            raise ValueError("length bounds require min >= 1")
        if self.min > self.max:
            raise ValueError(f"length bounds out of order: {self.min} > {self.max}")


@dataclass(frozen=True)
class DatasetStats:
    """Triple/lemma counts plus lemma-overlap percentages against references."""

    triple_count: int
    lemma_count: int
    overlap_vs: dict[str, float] = field(default_factory=dict)


def parse_tsv(
    data: bytes | str,
    strict: bool = True,
    label: str = "",
    nfc: bool = False,
) -> Dataset:
    """Parse three-column TSV text into a Dataset.

    Empty lines are ignored. In strict mode any malformed line raises
    ParseError naming the line; otherwise malformed lines are skipped and
    counted in a warning. ``nfc=True`` applies NFC normalization to the
    decoded text before parsing.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not valid UTF-8 at byte {e.start}") from e
    else:
        text = data
    if nfc:
        text = unicodedata.normalize("NFC", text)

    triples: list[Triple] = []
    skipped = 0
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        columns = line.split("\t")
        if len(columns) != 3:
            msg = f"line {lineno}: expected 3 columns, found {len(columns)}"
            if strict:
                raise ParseError(msg)
            logger.warning("%s (skipped)", msg)
            skipped += 1
            continue
        lemma, form, tag_string = columns
        try:
            triples.append(Triple(lemma, tuple(tag_string.split(";")), form))
        except ValueError as e:
            if strict:
                raise ParseError(f"line {lineno}: {e}") from e
            logger.warning("line %d: %s (skipped)", lineno, e)
            skipped += 1
    if skipped:
        logger.warning("skipped %d malformed line(s)", skipped)
    return Dataset(tuple(triples), label=label)


def write_tsv(d: Dataset) -> str:
    """Serialize a Dataset; parse_tsv(write_tsv(d)) reproduces d exactly."""
    return "".join(f"{t.lemma}\t{t.form}\t{t.tag_string}\n" for t in d.triples)


def load_tsv(path, strict: bool = True, label: str | None = None, nfc: bool = False) -> Dataset:
    """Read a TSV file; the label defaults to the file name."""
    import pathlib

    p = pathlib.Path(path)
    if label is None:
        label = p.name
    return parse_tsv(p.read_bytes(), strict=strict, label=label, nfc=nfc)


def dump_tsv(d: Dataset, path) -> None:
    import pathlib

    pathlib.Path(path).write_bytes(write_tsv(d).encode("utf-8"))


def concat_datasets(datasets: Sequence[Dataset], label: str = "") -> Dataset:
    triples: list[Triple] = []
    for d in datasets:
        triples.extend(d.triples)
    return Dataset(tuple(triples), label=label)


def build_paradigms(d: Dataset) -> list[Paradigm]:
    """Group triples by lemma, paradigms ordered by first lemma appearance."""
    groups: dict[str, list[Triple]] = {}
    for t in d.triples:
        groups.setdefault(t.lemma, []).append(t)
    return [Paradigm(lemma, tuple(ts)) for lemma, ts in groups.items()]


def _round_pct(shared: int, total: int) -> float:
    """Percentage rounded half-up to two decimals."""
    if total == 0:
        return 0.0
    q = (Decimal(shared * 100) / Decimal(total)).quantize(Decimal("0.01"), ROUND_HALF_UP)
    return float(q)


def compute_stats(d: Dataset, references: Sequence[Dataset] = ()) -> DatasetStats:
    """Count triples and distinct lemmata; report lemma overlap vs references.

    Overlap against a reference R is the share of this dataset's distinct
    lemmata that also occur in R, in percent, rounded half-up to two
    decimals. An empty dataset has overlap 0 by definition.
    """
    lemmata = set(t.lemma for t in d.triples)
    overlap: dict[str, float] = {}
    for i, ref in enumerate(references):
        key = ref.label or f"ref{i}"
        shared = len(lemmata & {t.lemma for t in ref.triples})
        overlap[key] = _round_pct(shared, len(lemmata))
    return DatasetStats(len(d.triples), len(lemmata), overlap)


def _iter_words(sources: Iterable[Dataset], fields: FieldSelector) -> Iterator[str]:
    if fields not in ("lemma", "form", "both"):
        raise ValueError(f"unknown field selector: {fields!r}")
    for d in sources:
        for t in d.triples:
            if fields in ("lemma", "both"):
                yield t.lemma
            if fields in ("form", "both"):
                yield t.form


def collect_alphabet(sources: Iterable[Dataset], fields: FieldSelector = "both") -> Alphabet:
    """All code points occurring in the selected fields."""
    chars: set[str] = set()
    for word in _iter_words(sources, fields):
        chars.update(word)
    if not chars:
        raise ValueError("empty alphabet")
    return frozenset(chars)


def collect_ngrams(sources: Iterable[Dataset], fields: FieldSelector = "both") -> NGramInventory:
    """All contiguous substrings of lengths 2, 3 and 4 in the selected fields."""
    grams: set[str] = set()
    for word in _iter_words(sources, fields):
        for n in NGRAM_SIZES:
            for i in range(len(word) - n + 1):
                grams.add(word[i : i + n])
    if not grams:
        raise ValueError("empty n-gram inventory")
    return frozenset(grams)


def length_bounds(words: Sequence[str]) -> LengthBounds:
    """Min/max code-point length over a non-empty list of non-empty words."""
    if not words:
        raise ValueError("length_bounds of an empty word list")
    lengths = [len(w) for w in words]
    if min(lengths) == 0:
        raise ValueError("length_bounds with an empty word")
    return LengthBounds(min(lengths), max(lengths))


def format_stats_table(rows: Sequence[tuple[str, DatasetStats]]) -> str:
    """Aligned plain-text table, one row per dataset."""
    ref_keys: list[str] = []
    for _, stats in rows:
        for key in stats.overlap_vs:
            if key not in ref_keys:
                ref_keys.append(key)
    header = ["dataset", "triples", "lemmata"] + [f"overlap%-vs-{k}" for k in ref_keys]
    body = []
    for label, stats in rows:
        cells = [label, str(stats.triple_count), str(stats.lemma_count)]
        for key in ref_keys:
            v = stats.overlap_vs.get(key)
            cells.append("-" if v is None else f"{v:.2f}")
        body.append(cells)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = []
    for cells in [header] + body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
    return "\n".join(lines) + "\n"


def format_stats_kv(rows: Sequence[tuple[str, DatasetStats]]) -> str:
    """Machine-readable key=value lines mirroring the table columns."""
    lines = []
    for label, stats in rows:
        lines.append(f"{label}.triples={stats.triple_count}")
        lines.append(f"{label}.lemmata={stats.lemma_count}")
        for key, v in stats.overlap_vs.items():
            lines.append(f"{label}.overlap_vs.{key}={v:.2f}")
    return "\n".join(lines) + "\n"
