import json

import pytest
from hypothesis import given, strategies as st

from enhi_translit.errors import EmptyEvaluation, ParseError
from enhi_translit.evaluation import (
    Counts,
    EvalRecord,
    EvalReport,
    parse_report_tsv,
    per_category_report,
    read_eval_tsv,
    render_report,
    score,
)
from enhi_translit.ner_io import EntityCategory, TaggedEntity

TABLE_VI = {
    EntityCategory.PERSON: (5263, 5263, 4893),
    EntityCategory.LOCATION: (2770, 2770, 2603),
    EntityCategory.ORGANIZATION: (1108, 1107, 143),
    EntityCategory.DATE: (13, 13, 13),
    EntityCategory.TIME: (27, 27, 27),
    EntityCategory.MISC: (53, 0, 0),
}


def synth_records(rows):
    """Records realising (reference, system, correct) counts per category."""
    records = []
    for cat, (ref, sys_, ok) in rows.items():
        ent = TaggedEntity("x", cat)
        records += [EvalRecord(ent, "राम", "राम")] * ok
        records += [EvalRecord(ent, "रम", "राम")] * (sys_ - ok)
        records += [EvalRecord(ent, None, "राम")] * (ref - sys_)
    return records


def test_table_v_arithmetic():
    c = Counts(reference_count=9234, system_count=9180, correct_count=7679)
    assert c.precision == pytest.approx(0.8365, abs=1e-4)
    assert c.recall == pytest.approx(0.8316, abs=1e-4)
    assert c.f_measure == pytest.approx(0.8340, abs=1e-4)


def test_table_vi_rows_from_records():
    report = per_category_report(synth_records(TABLE_VI))
    for cat, (ref, sys_, ok) in TABLE_VI.items():
        assert report.per_category[cat] == Counts(ref, sys_, ok)
    assert report.total == Counts(9234, 9180, 7679)
    assert report.per_category[EntityCategory.MISC].precision_undefined


def test_score_perfect_and_degenerate():
    ent = TaggedEntity("Ram", EntityCategory.PERSON)
    perfect = score([EvalRecord(ent, "राम", "राम")] * 3).total
    assert (perfect.precision, perfect.recall, perfect.f_measure) == (1.0, 1.0, 1.0)
    none = score([EvalRecord(ent, None, "राम")] * 3).total
    assert none.precision_undefined
    assert (none.precision, none.recall, none.f_measure) == (0.0, 0.0, 0.0)


def test_nfc_comparison():
    ent = TaggedEntity("x", EntityCategory.PERSON)
    rec = EvalRecord(ent, "ऩ", "ऩ")
    assert rec.correct


def test_empty_evaluation():
    with pytest.raises(EmptyEvaluation):
        score([])
    with pytest.raises(EmptyEvaluation):
        per_category_report([])


def test_single_category_breakdown():
    ent = TaggedEntity("x", EntityCategory.DATE)
    report = per_category_report([EvalRecord(ent, "1592", "1592")] * 4)
    nonzero = [c for c in report.per_category.values() if c.reference_count]
    assert nonzero == [report.total]
    assert len(report.per_category) == 6


def test_counts_invariant():
    with pytest.raises(ValueError):
        Counts(reference_count=1, system_count=5, correct_count=2)


def test_render_text_table_v():
    report = EvalReport(Counts(9234, 9180, 7679))
    text = render_report(report, "text").decode("utf-8")
    assert "F-Measure  0.8340" in text
    assert "Precision  0.8365" in text
    assert "Recall     0.8316" in text


def test_render_keeps_empty_rows():
    ent = TaggedEntity("x", EntityCategory.PERSON)
    report = per_category_report([EvalRecord(ent, "राम", "राम")])
    text = render_report(report, "text").decode()
    for cat in EntityCategory:
        assert cat.value in text
    tsv = render_report(report, "tsv").decode().splitlines()
    assert len(tsv) == 1 + 6 + 1
    assert "Time\t0\t0\t0\t0.0000\t0.0000\t0.0000" in tsv


def test_tsv_round_trip():
    report = per_category_report(synth_records(TABLE_VI))
    assert parse_report_tsv(render_report(report, "tsv")) == report


def test_jsonl():
    report = per_category_report(synth_records(TABLE_VI))
    rows = [json.loads(ln) for ln in render_report(report, "jsonl").decode().splitlines()]
    assert rows[-1]["category"] == "Total"
    assert rows[-1]["f_measure"] == 0.834
    assert rows[5]["precision_undefined"] is True


def test_render_deterministic():
    report = per_category_report(synth_records(TABLE_VI))
    for fmt in ("text", "tsv", "jsonl"):
        assert render_report(report, fmt) == render_report(report, fmt)


def test_read_eval_tsv():
    lines = [
        "Ram\tPerson\tराम\tराम\n",
        "X Corp\tOrganization\t-\tएक्स कॉर्प\n",
    ]
    recs = list(read_eval_tsv(lines))
    assert recs[0].correct
    assert recs[1].system_output is None
    assert recs[1].entity.category is EntityCategory.ORGANIZATION


@pytest.mark.parametrize("line", ["Ram\tPerson\tराम\n", "Ram\tDeity\tराम\tराम\n", "Ram\tPerson\tराम\t \n"])
def test_read_eval_tsv_errors(line):
    with pytest.raises(ParseError):
        list(read_eval_tsv([line]))


count_rows = st.dictionaries(
    st.sampled_from(list(EntityCategory)),
    st.tuples(st.integers(0, 30), st.integers(0, 30), st.integers(0, 30)).map(
        lambda t: (max(t[0], 1), min(t[1], max(t[0], 1)), min(t[2], t[1], max(t[0], 1)))
    ),
    min_size=1,
)


@given(count_rows)
def test_category_totals_are_sums(rows):
    report = per_category_report(synth_records(rows))
    total = sum(report.per_category.values(), Counts())
    assert report.total == total
    for c in list(report.per_category.values()) + [report.total]:
        assert c.correct_count <= min(c.system_count, c.reference_count)
        assert 0 <= c.precision <= 1 and 0 <= c.recall <= 1
        if c.precision > 0 and c.recall > 0:
            assert min(c.precision, c.recall) - 1e-12 <= c.f_measure <= (c.precision + c.recall) / 2 + 1e-12
        if c.precision + c.recall > 0:
            assert abs(c.f_measure - 2 * c.precision * c.recall / (c.precision + c.recall)) <= 5e-5
        p, r = round(c.precision, 4), round(c.recall, 4)
        if p + r > 0:
            # printed values: F rounding (5e-5) plus |dF/dP|, |dF/dR| <= 2 times P, R rounding
            assert abs(round(c.f_measure, 4) - 2 * p * r / (p + r)) <= 5e-5 + 2 * 5e-5 + 2 * 5e-5


def test_printed_table_v_consistency():
    text = render_report(EvalReport(Counts(9234, 9180, 7679)), "text").decode()
    values = dict(line.rsplit(None, 1) for line in text.splitlines() if line.strip())
    p, r, f = (float(values[k]) for k in ("Precision", "Recall", "F-Measure"))
    assert abs(f - 2 * p * r / (p + r)) <= 5e-5
