import io
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from enhi_translit.errors import EmptySource, InvariantViolation, ParseError
from enhi_translit.knowledge_base import (
    AlignStats,
    KnowledgeBase,
    PhonemePair,
    align_corpus,
    align_word_pair,
    dumps_kb,
    estimate,
    ingest_pairs,
    loads_kb,
    lookup,
)


def brute_force_tally(pairs):
    """Independent recount: list.count over the raw stream."""
    pairs = list(pairs)
    return {p: pairs.count(p) for p in set(pairs)}


def test_ingest_counts():
    stream = [("ra", "रा"), ("ra", "रा"), ("ra", "र")]
    counts = ingest_pairs(stream)
    expected = brute_force_tally(stream)
    assert counts.pair_counts["ra", "रा"] == expected["ra", "रा"] == 2
    assert counts.pair_counts["ra", "र"] == expected["ra", "र"] == 1
    assert counts.english_counts["ra"] == 3


def test_ingest_single_and_empty():
    counts = ingest_pairs([PhonemePair("bh", "भ")])
    assert counts.pair_counts["bh", "भ"] == 1
    assert counts.english_counts["bh"] == 1
    with pytest.raises(EmptySource):
        ingest_pairs([])


def test_ingest_tsv_lines_skips_malformed():
    lines = [
        "# comment\n",
        "ra\tरा\n",
        "bad line without tab\n",
        "\n",
        "ra\tram\n",        # not Devanagari
        "r4\tर\n",          # not letters
        "m\tम\n",
    ]
    counts = ingest_pairs(lines)
    assert counts.read == 2
    assert [lineno for lineno, _ in counts.skipped] == [3, 5, 6]


def test_hindi_is_nfc_normalised():
    # NA + NUKTA composes to NNNA under NFC
    assert PhonemePair("na", "\u0928\u093c").hindi == "\u0929"
    assert PhonemePair("KA", "क").english == "ka"


def test_estimate_matches_hand_computation():
    kb = estimate(ingest_pairs([("ra", "रा"), ("ra", "रा"), ("ra", "र"), ("bh", "भ")]))
    cands = dict(kb.lookup("ra"))
    # 2/3 and 1/3 computed by hand
    assert cands["रा"] == pytest.approx(0.6667, abs=1e-4)
    assert cands["र"] == pytest.approx(0.3333, abs=1e-4)
    assert kb.lookup("bh") == [("भ", 1.0)]


def test_table_snapshot_rows(seed_kb):
    assert seed_kb.lookup("shi")[0] == ("शि", pytest.approx(0.6788, abs=1e-12))
    assert seed_kb.lookup("ra")[0] == ("रा", pytest.approx(0.6532, abs=1e-12))
    assert seed_kb.lookup("a")[0] == ("अ", pytest.approx(0.4532, abs=1e-12))
    assert seed_kb.lookup("bh")[0] == ("भ", pytest.approx(0.3218, abs=1e-12))
    assert seed_kb.lookup("i")[0] == ("ई", pytest.approx(0.4312, abs=1e-12))
    assert seed_kb.lookup("ro")[0] == ("रो", pytest.approx(0.4533, abs=1e-12))


def test_lookup_unknown_and_ties():
    kb = KnowledgeBase({("x", "आ"): 1, ("x", "अ"): 1})
    assert lookup(kb, "zzz") == []
    assert lookup(kb, "x") == [("अ", 0.5), ("आ", 0.5)]
    assert lookup(kb, "X") == [("अ", 0.5), ("आ", 0.5)]


def test_round_trip_seed(seed_kb):
    again = loads_kb(dumps_kb(seed_kb))
    assert again == seed_kb
    assert again.counts() == seed_kb.counts()


def test_saved_rows_sorted(seed_kb):
    rows = [ln.split("\t") for ln in dumps_kb(seed_kb).splitlines() if not ln.startswith("#")]
    assert rows[0] == ["english", "hindi", "count"]
    keys = [(r[0], r[1]) for r in rows[1:]]
    assert keys == sorted(keys)


@pytest.mark.parametrize("body, message", [
    ("english\thindi\tcount\nra\tर\t-1\n", "negative"),
    ("english\thindi\tcount\nra\tर\t1\nra\tर\t2\n", "duplicate entry (ra, र)"),
    ("english\thindi\tcount\nra\tर\n", "3 columns"),
    ("english\thindi\tcount\nra\tर\tx\n", "integer"),
    ("ra\tर\t1\n", "header"),
    ("english\thindi\tcount\n", "no entries"),
])
def test_load_errors(body, message):
    with pytest.raises(ParseError, match=message.replace("(", r"\(").replace(")", r"\)")):
        loads_kb(body)


def test_load_reports_line_number():
    with pytest.raises(ParseError) as info:
        loads_kb("# meta: x\nenglish\thindi\tcount\nra\tर\t1\nra\tर\t-3\n")
    assert info.value.line == 4


def test_zero_mass_is_invariant_violation():
    with pytest.raises(InvariantViolation):
        loads_kb("english\thindi\tcount\nra\tर\t0\n")


def test_metadata_survives(seed_kb):
    text = dumps_kb(seed_kb)
    assert text.startswith("# source:")
    assert loads_kb(text).metadata["source"] == seed_kb.metadata["source"]


@pytest.mark.parametrize("english, hindi, expected", [
    ("Ram", "राम", [("ra", "रा"), ("m", "म")]),
    ("Bhopal", "भोपाल", [("bho", "भो"), ("pa", "पा"), ("l", "ल")]),
    ("Krishna", "कृष्ण", [("kri", "कृ"), ("shna", "ष्ण")]),
])
def test_align_word_pair(english, hindi, expected):
    pairs = align_word_pair(english, hindi)
    assert [(p.english, p.hindi) for p in pairs] == expected


def test_unalignable():
    assert align_word_pair("a", "अआइ") is None
    assert align_word_pair("1592", "१५९२") is None


def test_align_corpus_stats():
    lines = ["Ram\tराम\n", "a\tअआइ\n", "broken\n", "# c\n", "Bhopal\tभोपाल\n"]
    stats = AlignStats()
    pairs = list(align_corpus(lines, stats=stats))
    assert len(pairs) == 5
    assert stats.read == 3 and stats.aligned == 2
    assert stats.unalignable == [(2, "a", "अआइ")]
    assert [ln for ln, _ in stats.skipped] == [3]


# -- property tests ----------------------------------------------------------

phoneme = st.sampled_from(["a", "ra", "bh", "shi", "m", "pa"])
rendering = st.sampled_from(["अ", "आ", "र", "रा", "भ", "शि", "म", "पा"])
corpus = st.lists(st.tuples(phoneme, rendering), min_size=1, max_size=40)


@given(corpus)
def test_estimate_equals_recount(stream):
    kb = estimate(ingest_pairs(stream))
    tally = brute_force_tally(stream)
    totals = Counter(e for e, _ in stream)
    for english in totals:
        cands = kb.lookup(english)
        assert abs(sum(p for _, p in cands) - 1.0) <= 1e-9
        for hindi, prob in cands:
            assert prob == pytest.approx(float(Fraction(tally[english, hindi], totals[english])), abs=1e-12)


@given(corpus)
def test_lookup_order_is_total(stream):
    kb = estimate(ingest_pairs(stream))
    for english in kb.phonemes():
        cands = kb.lookup(english)
        assert cands == sorted(cands, key=lambda hp: (-hp[1], hp[0]))


@settings(max_examples=50)
@given(st.dictionaries(st.tuples(phoneme, rendering), st.integers(1, 10_000), min_size=1))
def test_persistence_round_trip(counts):
    kb = KnowledgeBase(counts)
    buf = io.StringIO(dumps_kb(kb))
    assert loads_kb(buf.getvalue()).counts() == dict(counts)
