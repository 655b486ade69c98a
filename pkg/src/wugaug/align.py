"""Character alignment of lemma and form, stem spans and affix templates.

The aligner is a deterministic unit-cost edit-distance alignment: MATCH
costs 0, SUBST/DELETE/INSERT cost 1. Among the minimal-cost alignments it
picks exactly one by walking the pair left to right and preferring, at each
position, MATCH over SUBST over DELETE over INSERT whenever that choice
still lies on a minimal-cost path. Maximal runs of MATCH ops are the stem
spans; the material around them is the affix template, which rebuilds the
original pair when the original stems are substituted back in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

MATCH = "match"
SUBST = "subst"
DELETE = "delete"
INSERT = "insert"


class EditOp(NamedTuple):
    kind: str
    lemma_char: str  # "" for INSERT
    form_char: str  # "" for DELETE


class StemSpan(NamedTuple):
    """Half-open matched interval on both sides; the two substrings are equal."""

    lemma_start: int
    lemma_end: int
    form_start: int
    form_end: int


@dataclass(frozen=True)
class Alignment:
    lemma: str
    form: str
    ops: tuple[EditOp, ...]

    @property
    def cost(self) -> int:
        return sum(1 for op in self.ops if op.kind != MATCH)


class TemplateError(ValueError):
    """Raised when a template cannot be built (no stem to replace)."""


def _suffix_distances(a: str, b: str) -> list[list[int]]:
    # D[i][j] = unit-cost edit distance between a[i:] and b[j:]
    n, m = len(a), len(b)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for j in range(m + 1):
        d[n][j] = m - j
    for i in range(n - 1, -1, -1):
        d[i][m] = n - i
        row, below = d[i], d[i + 1]
        ai = a[i]
        for j in range(m - 1, -1, -1):
            best = below[j + 1] + (0 if ai == b[j] else 1)
            if below[j] + 1 < best:
                best = below[j] + 1
            if row[j + 1] + 1 < best:
                best = row[j + 1] + 1
            row[j] = best
    return d


def align(lemma: str, form: str) -> Alignment:
    """Minimal-cost alignment with deterministic left-to-right tie-breaking."""
    if not lemma or not form:
        raise ValueError("align requires non-empty lemma and form")
    d = _suffix_distances(lemma, form)
    n, m = len(lemma), len(form)
    ops: list[EditOp] = []
    i = j = 0
    while i < n or j < m:
        here = d[i][j]
        if i < n and j < m and lemma[i] == form[j] and d[i + 1][j + 1] == here:
            ops.append(EditOp(MATCH, lemma[i], form[j]))
            i += 1
            j += 1
        elif i < n and j < m and lemma[i] != form[j] and d[i + 1][j + 1] + 1 == here:
            ops.append(EditOp(SUBST, lemma[i], form[j]))
            i += 1
            j += 1
        elif i < n and d[i + 1][j] + 1 == here:
            ops.append(EditOp(DELETE, lemma[i], ""))
            i += 1
        else:
            ops.append(EditOp(INSERT, "", form[j]))
            j += 1
    return Alignment(lemma, form, tuple(ops))


def extract_stem(a: Alignment, min_run: int = 1) -> tuple[StemSpan, ...]:
    """Maximal MATCH runs as spans, in order; runs shorter than min_run are dropped."""
    if min_run < 1:
        raise ValueError("min_run must be >= 1")
    spans: list[StemSpan] = []
    i = j = 0
    run_start: tuple[int, int] | None = None
    for op in a.ops:
        if op.kind == MATCH:
            if run_start is None:
                run_start = (i, j)
        elif run_start is not None:
            spans.append(StemSpan(run_start[0], i, run_start[1], j))
            run_start = None
        if op.kind != INSERT:
            i += 1
        if op.kind != DELETE:
            j += 1
    if run_start is not None:
        spans.append(StemSpan(run_start[0], i, run_start[1], j))
    return tuple(s for s in spans if s.lemma_end - s.lemma_start >= min_run)


#: template piece: literal string, or int index of a stem slot
Piece = str | int


@dataclass(frozen=True)
class AffixTemplate:
    """Lemma- and form-side piece sequences around numbered stem slots."""

    lemma_pieces: tuple[Piece, ...]
    form_pieces: tuple[Piece, ...]
    stems: tuple[str, ...]  # the original span substrings, one per slot

    def render(self, stems: Sequence[str]) -> tuple[str, str]:
        """Substitute replacement stems into both sides."""
        if len(stems) != len(self.stems):
            raise ValueError(f"expected {len(self.stems)} stems, got {len(stems)}")

        def fill(pieces: tuple[Piece, ...]) -> str:
            return "".join(stems[p] if isinstance(p, int) else p for p in pieces)

        return fill(self.lemma_pieces), fill(self.form_pieces)


def _pieces(word: str, bounds: list[tuple[int, int]]) -> tuple[Piece, ...]:
    pieces: list[Piece] = []
    pos = 0
    for slot, (start, end) in enumerate(bounds):
        if start > pos:
            pieces.append(word[pos:start])
        pieces.append(slot)
        pos = end
    if pos < len(word):
        pieces.append(word[pos:])
    return tuple(pieces)


def build_template(lemma: str, form: str, spans: Sequence[StemSpan]) -> AffixTemplate:
    """Carve lemma and form around the given spans, one slot per span."""
    if not spans:
        raise TemplateError("no stem to templatize")
    stems = []
    for s in spans:
        lemma_sub = lemma[s.lemma_start : s.lemma_end]
        form_sub = form[s.form_start : s.form_end]
        if lemma_sub != form_sub:
            raise ValueError(f"span substrings differ: {lemma_sub!r} vs {form_sub!r}")
        stems.append(lemma_sub)
    lemma_pieces = _pieces(lemma, [(s.lemma_start, s.lemma_end) for s in spans])
    form_pieces = _pieces(form, [(s.form_start, s.form_end) for s in spans])
    return AffixTemplate(lemma_pieces, form_pieces, tuple(stems))


def format_alignment(a: Alignment) -> str:
    """Two-row visual rendering with '-' marking one-sided positions."""
    top = "".join(op.lemma_char or "-" for op in a.ops)
    bottom = "".join(op.form_char or "-" for op in a.ops)
    return f"{top}\n{bottom}"


def format_stems(word: str, bounds: Sequence[tuple[int, int]]) -> str:
    """Bracket the matched regions of one side, e.g. ge[s]u[ngen]."""
    out = []
    pos = 0
    for start, end in bounds:
        out.append(word[pos:start])
        out.append("[" + word[start:end] + "]")
        pos = end
    out.append(word[pos:])
    return "".join(out)


def format_stem_spans(a: Alignment, spans: Sequence[StemSpan]) -> tuple[str, str]:
    """Bracketed lemma and form renderings of the stem spans."""
    lemma_side = format_stems(a.lemma, [(s.lemma_start, s.lemma_end) for s in spans])
    form_side = format_stems(a.form, [(s.form_start, s.form_end) for s in spans])
    return lemma_side, form_side
