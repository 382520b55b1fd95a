"""Precision / recall / F-measure scoring of transliterated entities.

    precision = correct / system output
    recall    = correct / reference output
    F         = 2PR / (P + R)

"System output" counts entities for which the system produced anything;
skipped entities (NoOutput) lower recall but not precision. A match is exact
string equality after NFC normalisation.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .devanagari import nfc
from .errors import EmptyEvaluation, ParseError
from .ner_io import EntityCategory, TaggedEntity

NO_OUTPUT = "-"
FORMATS = ("text", "tsv", "jsonl")
TSV_HEADER = ("category", "reference", "system", "correct", "precision", "recall", "f_measure")


@dataclass(frozen=True)
class EvalRecord:
    entity: TaggedEntity
    system_output: str | None
    reference: str

    def __post_init__(self):
        if not self.reference.strip():
            raise ValueError("reference must be non-empty")

    @property
    def correct(self) -> bool:
        return self.system_output is not None and nfc(self.system_output) == nfc(self.reference)


@dataclass(frozen=True)
class Counts:
    reference_count: int = 0
    system_count: int = 0
    correct_count: int = 0

    def __post_init__(self):
        if min(self.reference_count, self.system_count, self.correct_count) < 0:
            raise ValueError("counts must be non-negative")
        if self.correct_count > min(self.system_count, self.reference_count):
            raise ValueError(
                f"correct ({self.correct_count}) exceeds system ({self.system_count}) "
                f"or reference ({self.reference_count})"
            )

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(
            self.reference_count + other.reference_count,
            self.system_count + other.system_count,
            self.correct_count + other.correct_count,
        )

    @property
    def precision_undefined(self) -> bool:
        return self.system_count == 0

    @property
    def precision(self) -> float:
        # reported as 0 when there is no system output; see precision_undefined
        return self.correct_count / self.system_count if self.system_count else 0.0

    @property
    def recall(self) -> float:
        return self.correct_count / self.reference_count if self.reference_count else 0.0

    @property
    def f_measure(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r > 0 else 0.0


@dataclass(frozen=True)
class EvalReport:
    total: Counts
    per_category: Mapping[EntityCategory, Counts] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, rows: Mapping[EntityCategory, Counts]) -> "EvalReport":
        """Build a six-class report; missing categories become zero rows."""
        full = {cat: rows.get(cat, Counts()) for cat in EntityCategory}
        total = sum(full.values(), Counts())
        return cls(total, full)


def _tally(records: Iterable[EvalRecord]) -> Counts:
    ref = sys_ = ok = 0
    for rec in records:
        ref += 1
        if rec.system_output is not None:
            sys_ += 1
        if rec.correct:
            ok += 1
    return Counts(ref, sys_, ok)


def score(records: Iterable[EvalRecord]) -> EvalReport:
    """Overall counts and metrics; ``per_category`` is left empty."""
    records = list(records)
    if not records:
        raise EmptyEvaluation("no records to score")
    return EvalReport(_tally(records))


def per_category_report(records: Iterable[EvalRecord]) -> EvalReport:
    records = list(records)
    if not records:
        raise EmptyEvaluation("no records to score")
    by_cat: dict[EntityCategory, list[EvalRecord]] = {}
    for rec in records:
        by_cat.setdefault(rec.entity.category, []).append(rec)
    return EvalReport.from_rows({cat: _tally(recs) for cat, recs in by_cat.items()})


def _rows(report: EvalReport) -> Iterator[tuple[str, Counts]]:
    for cat in EntityCategory:
        if cat in report.per_category:
            yield cat.value, report.per_category[cat]
    yield "Total", report.total


def render_report(report: EvalReport, format: str = "text") -> bytes:
    """Serialise ``report``; metrics are printed with four decimals."""
    if format == "text":
        return _render_text(report).encode("utf-8")
    if format == "tsv":
        lines = ["\t".join(TSV_HEADER)]
        for name, c in _rows(report):
            lines.append(
                f"{name}\t{c.reference_count}\t{c.system_count}\t{c.correct_count}\t"
                f"{c.precision:.4f}\t{c.recall:.4f}\t{c.f_measure:.4f}"
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    if format == "jsonl":
        out = []
        for name, c in _rows(report):
            row = {
                "category": name,
                "reference": c.reference_count,
                "system": c.system_count,
                "correct": c.correct_count,
                "precision": round(c.precision, 4),
                "recall": round(c.recall, 4),
                "f_measure": round(c.f_measure, 4),
                "precision_undefined": c.precision_undefined,
            }
            out.append(json.dumps(row, ensure_ascii=False, sort_keys=True))
        return ("\n".join(out) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}; expected one of {FORMATS}")


def _render_text(report: EvalReport) -> str:
    buf = io.StringIO()
    if report.per_category:
        buf.write(f"{'Category':<14}{'Reference':>10}{'System':>8}{'Correct':>9}"
                  f"{'Precision':>11}{'Recall':>8}{'F-Measure':>11}\n")
        for name, c in _rows(report):
            flag = " *" if c.precision_undefined else ""
            buf.write(f"{name:<14}{c.reference_count:>10}{c.system_count:>8}{c.correct_count:>9}"
                      f"{c.precision:>11.4f}{c.recall:>8.4f}{c.f_measure:>11.4f}{flag}\n")
        buf.write("\n")
    t = report.total
    buf.write(f"Reference Output  {t.reference_count}\n")
    buf.write(f"System Output     {t.system_count}\n")
    buf.write(f"Correct           {t.correct_count}\n")
    buf.write(f"Precision  {t.precision:.4f}\n")
    buf.write(f"Recall     {t.recall:.4f}\n")
    buf.write(f"F-Measure  {t.f_measure:.4f}\n")
    if any(c.precision_undefined for _, c in _rows(report)):
        buf.write("* no system output: precision undefined, reported as 0\n")
    return buf.getvalue()


def parse_report_tsv(data: bytes | str) -> EvalReport:
    """Read back the ``tsv`` rendering. Metrics are recomputed from counts."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or tuple(lines[0].split("\t")) != TSV_HEADER:
        raise ParseError("missing report header", 1)
    rows: dict[EntityCategory, Counts] = {}
    total = None
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split("\t")
        if len(parts) != len(TSV_HEADER):
            raise ParseError("wrong column count", lineno)
        try:
            counts = Counts(int(parts[1]), int(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if parts[0] == "Total":
            total = counts
            continue
        try:
            rows[EntityCategory(parts[0])] = counts
        except ValueError:
            raise ParseError(f"unknown category {parts[0]!r}", lineno) from None
    if total is None:
        raise ParseError("missing Total row")
    return EvalReport(total, rows)


def read_eval_tsv(lines: Iterable[str]) -> Iterator[EvalRecord]:
    """Parse ``entity_text<TAB>category<TAB>system_output<TAB>reference`` lines.

    A system output of ``-`` means the system produced nothing.
    """
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ParseError(f"expected 4 columns, got {len(parts)}", lineno)
        text, cat_name, output, reference = (p.strip() for p in parts)
        try:
            category = EntityCategory.parse(cat_name)
        except KeyError:
            category = None
        if category is None:
            raise ParseError(f"unknown category {cat_name!r}", lineno)
        if not text or not reference:
            raise ParseError("entity text and reference must be non-empty", lineno)
        entity = TaggedEntity(text, category, 0, (0, len(text.split())))
        yield EvalRecord(entity, None if output in ("", NO_OUTPUT) else output, reference)
