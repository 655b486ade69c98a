import random

import pytest

from wugaug.corpus import (
    Dataset,
    ParseError,
    Triple,
    build_paradigms,
    collect_alphabet,
    collect_ngrams,
    compute_stats,
    concat_datasets,
    format_stats_kv,
    format_stats_table,
    length_bounds,
    load_tsv,
    parse_tsv,
    write_tsv,
)


def d(*triples: Triple, label: str = "") -> Dataset:
    return Dataset(tuple(triples), label=label)


def test_parse_single_line():
    ds = parse_tsv("talo\ttalossa\tN;IN+ESS\n")
    assert len(ds) == 1
    t = ds.triples[0]
    assert t.lemma == "talo"
    assert t.form == "talossa"
    assert t.tags == ("N", "IN+ESS")


def test_parse_empty_input():
    assert len(parse_tsv("")) == 0
    assert len(parse_tsv(b"")) == 0


def test_parse_strict_column_error():
    with pytest.raises(ParseError, match=r"line 1: expected 3 columns, found 2"):
        parse_tsv("a\tb\n", strict=True)


def test_parse_lenient_skips_and_warns(caplog):
    text = "a\tb\n" + "talo\ttalossa\tN\n" + "x\ty\tz\tw\n"
    with caplog.at_level("WARNING"):
        ds = parse_tsv(text, strict=False)
    assert len(ds) == 1
    assert "skipped 2 malformed line(s)" in caplog.text


def test_parse_bad_utf8_reports_byte_offset():
    with pytest.raises(ParseError, match="byte 2"):
        parse_tsv(b"ab\xff\tx\tT\n")


def test_parse_rejects_empty_fields_strict():
    with pytest.raises(ParseError, match="line 1"):
        parse_tsv("\tform\tT\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_tsv("lemma\t\tT\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_tsv("lemma\tform\t\n")


def test_parse_nfc_flag():
    # a + combining ring vs precomposed å
    decomposed = "å"
    raw = f"{decomposed}bc\txyz\tT\n"
    assert parse_tsv(raw).triples[0].lemma == decomposed + "bc"
    assert parse_tsv(raw, nfc=True).triples[0].lemma == "åbc"


def test_triple_invariants():
    with pytest.raises(ValueError):
        Triple("", ("T",), "x")
    with pytest.raises(ValueError):
        Triple("x", (), "y")
    with pytest.raises(ValueError):
        Triple("x", ("a;b",), "y")
    with pytest.raises(ValueError):
        Triple("x\ty", ("T",), "y")
    with pytest.raises(ValueError):
        Triple("x", ("T",), "y\n")


def test_write_single_triple():
    ds = d(Triple("talo", ("N", "IN+ESS"), "talossa"))
    assert write_tsv(ds) == "talo\ttalossa\tN;IN+ESS\n"


def test_write_empty_dataset():
    assert write_tsv(Dataset()) == ""


def test_write_preserves_order():
    ds = d(Triple("a", ("T",), "b"), Triple("c", ("U",), "e"))
    assert write_tsv(ds) == "a\tb\tT\nc\te\tU\n"


def _random_triple(rng: random.Random) -> Triple:
    alphabet = "abcçдü語"
    word = lambda: "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 8)))
    tags = tuple(word().replace(";", "x") for _ in range(rng.randint(1, 3)))
    return Triple(word(), tags, word())


def test_roundtrip_random_datasets():
    rng = random.Random(20240801)
    for _ in range(200):
        ds = Dataset(tuple(_random_triple(rng) for _ in range(rng.randint(0, 12))))
        assert parse_tsv(write_tsv(ds)) == Dataset(ds.triples)
        assert parse_tsv(write_tsv(ds).encode("utf-8")) == Dataset(ds.triples)


def test_build_paradigms_groups_by_first_appearance():
    ds = d(
        Triple("a", ("T",), "a1"),
        Triple("b", ("T",), "b1"),
        Triple("a", ("U",), "a2"),
    )
    paradigms = build_paradigms(ds)
    assert [p.lemma for p in paradigms] == ["a", "b"]
    assert [len(p) for p in paradigms] == [2, 1]
    assert paradigms[0].triples == (ds.triples[0], ds.triples[2])


def test_build_paradigms_empty():
    assert build_paradigms(Dataset()) == []


def test_paradigm_partition_property():
    rng = random.Random(7)
    for _ in range(50):
        lemmas = [rng.choice("abcdef") for _ in range(rng.randint(0, 20))]
        ds = Dataset(tuple(Triple(l, ("T",), l + "x") for l in lemmas))
        paradigms = build_paradigms(ds)
        flattened = [t for p in paradigms for t in p.triples]
        assert sorted(map(repr, flattened)) == sorted(map(repr, ds.triples))
        assert len({p.lemma for p in paradigms}) == len(paradigms)


def test_stats_counts_and_overlap():
    base = d(*(Triple(l, ("T",), l + "s") for l in "abcd"), label="q")
    ref = d(*(Triple(l, ("T",), l + "s") for l in "ae"), label="train")
    stats = compute_stats(base, [ref])
    assert stats.triple_count == 4
    assert stats.lemma_count == 4
    assert stats.overlap_vs == {"train": 25.0}


def test_stats_disjoint_is_zero():
    base = d(Triple("a", ("T",), "x"), label="q")
    ref = d(Triple("b", ("T",), "y"), label="r")
    assert compute_stats(base, [ref]).overlap_vs == {"r": 0.0}


def test_stats_self_overlap_is_100():
    rng = random.Random(3)
    for _ in range(20):
        triples = tuple(
            Triple("".join(rng.choice("abc") for _ in range(3)), ("T",), "zz")
            for _ in range(rng.randint(1, 10))
        )
        ds = Dataset(triples, label="self")
        assert compute_stats(ds, [ds]).overlap_vs == {"self": 100.0}


def test_stats_empty_dataset_overlap_zero():
    ref = d(Triple("a", ("T",), "x"), label="r")
    stats = compute_stats(Dataset(label="empty"), [ref])
    assert stats.triple_count == 0
    assert stats.overlap_vs == {"r": 0.0}


def test_stats_rounding_half_up():
    # 1 of 16 lemmata shared: 6.25 stays; 1 of 3: 33.333... -> 33.33
    base16 = d(*(Triple(f"l{i}", ("T",), "x") for i in range(16)), label="a")
    ref = d(Triple("l0", ("T",), "x"), label="r")
    assert compute_stats(base16, [ref]).overlap_vs["r"] == 6.25
    base3 = d(*(Triple(f"l{i}", ("T",), "x") for i in range(3)), label="b")
    assert compute_stats(base3, [ref]).overlap_vs["r"] == 33.33
    # exact half rounds up: 1 of 8 = 12.5 -> 12.50; 1 of 800 = 0.125 -> 0.13
    base800 = d(*(Triple(f"l{i}", ("T",), "x") for i in range(800)), label="c")
    assert compute_stats(base800, [ref]).overlap_vs["r"] == 0.13


def test_collect_alphabet_fields():
    ds = d(Triple("aba", ("T",), "abc"))
    assert collect_alphabet([ds]) == frozenset("abc")
    assert collect_alphabet([ds], "lemma") == frozenset("ab")
    assert collect_alphabet([ds], "form") == frozenset("abc")


def test_collect_alphabet_multibyte():
    ds = d(Triple("çok", ("T",), "çoklar"))
    assert "ç" in collect_alphabet([ds])


def test_collect_alphabet_empty_errors():
    with pytest.raises(ValueError, match="empty alphabet"):
        collect_alphabet([Dataset()])


def test_collect_ngrams_enumeration():
    ds = d(Triple("talo", ("T",), "talo"))
    assert collect_ngrams([ds]) == frozenset({"ta", "al", "lo", "tal", "alo", "talo"})


def test_collect_ngrams_short_word():
    ds = d(Triple("ab", ("T",), "ab"))
    assert collect_ngrams([ds]) == frozenset({"ab"})


def test_collect_ngrams_duplicates_collapse():
    ds = d(Triple("abab", ("T",), "abab"))
    assert collect_ngrams([ds]) == frozenset({"ab", "ba", "aba", "bab", "abab"})


def test_collect_ngrams_all_singletons_errors():
    ds = d(Triple("a", ("T",), "b"))
    with pytest.raises(ValueError, match="empty n-gram inventory"):
        collect_ngrams([ds])


def test_ngram_closure_and_alphabet_union():
    rng = random.Random(11)
    for _ in range(30):
        words = [
            "".join(rng.choice("abcd") for _ in range(rng.randint(2, 7)))
            for _ in range(rng.randint(1, 6))
        ]
        ds = Dataset(tuple(Triple(w, ("T",), w) for w in words))
        grams = collect_ngrams([ds])
        for g in grams:
            assert len(g) in (2, 3, 4)
            assert any(g in w for w in words)
        for w in words:
            for n in (2, 3, 4):
                for i in range(len(w) - n + 1):
                    assert w[i : i + n] in grams
        assert collect_alphabet([ds]) == frozenset("".join(grams))


@pytest.mark.parametrize(
    "words,expected",
    [(["ab", "abcde"], (2, 5)), (["xyz"], (3, 3)), (["a", "ab", "abc"], (1, 3))],
)
def test_length_bounds(words, expected):
    b = length_bounds(words)
    assert (b.min, b.max) == expected


def test_length_bounds_errors():
    with pytest.raises(ValueError):
        length_bounds([])
    with pytest.raises(ValueError):
        length_bounds(["ok", ""])


def test_load_tsv_labels_by_file_name(mini2018_dir):
    ds = load_tsv(mini2018_dir / "mini.train")
    assert ds.label == "mini.train"
    assert len(ds) == 20


def test_concat_datasets():
    a = d(Triple("a", ("T",), "x"), label="a")
    b = d(Triple("b", ("T",), "y"), label="b")
    merged = concat_datasets([a, b], label="ab")
    assert len(merged) == 2
    assert merged.label == "ab"


def test_format_stats_outputs():
    ds = d(Triple("a", ("T",), "x"), label="one")
    rows = [("one", compute_stats(ds, [ds]))]
    table = format_stats_table(rows)
    assert "one" in table and "100.00" in table
    kv = format_stats_kv(rows)
    assert "one.triples=1" in kv
    assert "one.overlap_vs.one=100.00" in kv
