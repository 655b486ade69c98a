"""Toolkit for unseen-lemma ("wug test") inflection datasets.

Parses three-column inflection TSVs, produces lemma-disjoint splits and
cross-validation folds, and augments training sets with copy-bias and
hallucinated triples generated character- or substring-wise.
"""

from .align import Alignment, StemSpan, align, build_template, extract_stem
from .corpus import (
    Dataset,
    LengthBounds,
    Paradigm,
    Triple,
    build_paradigms,
    collect_alphabet,
    collect_ngrams,
    compute_stats,
    length_bounds,
    parse_tsv,
    write_tsv,
)
from .hallucinate import (
    METHODS,
    AugmentationSpec,
    GenContext,
    augment,
    build_context,
    gen_copy_dummies,
    gen_copy_lemmas,
    generate,
    hallucinate_triple_char,
    hallucinate_triple_substr,
    synth_word,
)
from .splitter import Split, SplitSpec, cv_folds, verify_disjoint, wug_split
from .evalkit import aggregate, predict, score, train_rules

__version__ = "0.1.0"
