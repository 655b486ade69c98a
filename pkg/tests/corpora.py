"""Synthetic corpora used across the test suite.

All builders are deterministic: same call, same dataset.
"""

from wugaug.corpus import Dataset, Triple

SUFFIX_TAGSETS = [
    (("N", "IN+ESS"), "ssa"),
    (("N", "ADE"), "lla"),
    (("N", "PL"), "t"),
    (("N", "ELA"), "sta"),
]

SUFFIXING_STEMS = [
    "talo", "kello", "kissa", "koira", "lintu", "kala", "puu", "katu",
    "ovi", "silta", "ranta", "meri", "torni", "polku", "pelto", "savu",
    "pilvi", "hiekka", "lumi", "tuli",
]


def suffixing_corpus() -> Dataset:
    """Purely suffixing fixture: form = stem + one suffix per tag set."""
    triples = [
        Triple(stem, tags, stem + suffix)
        for stem in SUFFIXING_STEMS
        for tags, suffix in SUFFIX_TAGSETS
    ]
    return Dataset(tuple(triples), label="suffixing")


ABLAUT_ONSETS = ["s", "r", "tr", "kl", "schw", "f", "br", "st"]
ABLAUT_CODAS = ["ng", "nk", "mm", "ck", "tt", "rf", "nd", "ss"]


def ablaut_corpus() -> Dataset:
    """Prefix+ablaut fixture with discontinuous stems.

    Lemma o+i+c+en maps to ge+o+u+c+en (participle) and o+a+c+en
    (preterite), so the matched stem is split into two spans around the
    changed vowel.
    """
    triples = []
    for onset in ABLAUT_ONSETS:
        for coda in ABLAUT_CODAS:
            lemma = f"{onset}i{coda}en"
            triples.append(Triple(lemma, ("V", "PTCP", "PST"), f"ge{onset}u{coda}en"))
            triples.append(Triple(lemma, ("V", "PST", "PL"), f"{onset}a{coda}en"))
    return Dataset(tuple(triples), label="ablaut")


REGULAR_FIRST = ["pa", "ti", "ko", "mu", "ne"]
REGULAR_SECOND = ["la", "ri", "so", "vu", "me", "ki", "tu", "no"]

REGULAR_TAGSETS = [
    (("N", "CASE1"), "ssa"),
    (("N", "CASE2"), "lla"),
    (("N", "CASE3"), "sta"),
    (("N", "CASE4"), "lle"),
    (("N", "CASE5"), "na"),
    (("N", "CASE6"), "ksi"),
    (("N", "CASE7"), "tta"),
    (("N", "PL"), "t"),
]


def regular_language() -> Dataset:
    """Fully concatenative language: 40 stems, 8 tag sets, one suffix each."""
    stems = [a + b for a in REGULAR_FIRST for b in REGULAR_SECOND]
    triples = [
        Triple(stem, tags, stem + suffix)
        for stem in stems
        for tags, suffix in REGULAR_TAGSETS
    ]
    return Dataset(tuple(triples), label="regular")


def suppletive_corpus() -> Dataset:
    """Pairs with disjoint character sets, so no alignment has a MATCH."""
    pairs = [("abba", "xyz"), ("cab", "zzy"), ("bac", "yx")]
    triples = [Triple(lemma, ("V", "PST"), form) for lemma, form in pairs]
    return Dataset(tuple(triples), label="suppletive")
