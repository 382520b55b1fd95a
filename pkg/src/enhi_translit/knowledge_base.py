"""English→Hindi phoneme knowledge base estimated by relative frequency.

For an English phoneme ``e`` and a Hindi rendering ``h``::

    P(h | e) = Count(e, h) / Count(e)

Counts are the source of truth. Probabilities are derived on construction and
never persisted, so KBs can be merged or re-estimated without drift.

KB file format (UTF-8 TSV)::

    # source: ...            optional metadata comments
    english<TAB>hindi<TAB>count
    bh<TAB>भ<TAB>3218
    ...
"""

from __future__ import annotations

import io
import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import IO, Iterable, Iterator, Mapping

from .devanagari import is_devanagari_text, nfc, split_aksharas
from .errors import EmptySource, EmptyWord, InvariantViolation, ParseError
from .phonology import ASCII_LETTERS, DEFAULT_DIGRAPHS, segment_word

log = logging.getLogger(__name__)

KB_HEADER = ("english", "hindi", "count")
NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class PhonemePair:
    english: str
    hindi: str

    def __post_init__(self):
        if not self.english or any(ch not in ASCII_LETTERS for ch in self.english):
            raise ValueError(f"English phoneme must be Latin letters: {self.english!r}")
        hindi = nfc(self.hindi)
        if not is_devanagari_text(hindi):
            raise ValueError(f"Hindi phoneme must be Devanagari: {self.hindi!r}")
        object.__setattr__(self, "english", self.english.lower())
        object.__setattr__(self, "hindi", hindi)


@dataclass(frozen=True)
class KbEntry:
    english: str
    hindi: str
    count: int
    prob: float


@dataclass
class CountTable:
    """Raw tallies accumulated by :func:`ingest_pairs`."""

    pair_counts: Counter = field(default_factory=Counter)
    english_counts: Counter = field(default_factory=Counter)
    read: int = 0
    skipped: list[tuple[int, str]] = field(default_factory=list)

    def add(self, english: str, hindi: str, n: int = 1) -> None:
        self.pair_counts[english, hindi] += n
        self.english_counts[english] += n
        self.read += 1

    def update(self, other: "CountTable") -> None:
        self.pair_counts.update(other.pair_counts)
        self.english_counts.update(other.english_counts)
        self.read += other.read
        self.skipped.extend(other.skipped)

    def __len__(self) -> int:
        return len(self.pair_counts)


class KnowledgeBase:
    """Immutable table of ``english -> {hindi: count}`` with derived probabilities."""

    def __init__(self, counts: Mapping[tuple[str, str], int], metadata: Mapping[str, str] | None = None):
        table: dict[str, dict[str, int]] = {}
        for (english, hindi), count in counts.items():
            if count < 0:
                raise InvariantViolation(f"negative count for ({english}, {hindi})")
            table.setdefault(english, {})[hindi] = int(count)

        entries: dict[str, tuple[KbEntry, ...]] = {}
        for english, row in table.items():
            total = sum(row.values())
            if total <= 0:
                raise InvariantViolation(f"phoneme {english!r} has zero total count")
            ranked = sorted(row.items(), key=lambda kv: (-kv[1], kv[0]))
            entries[english] = tuple(KbEntry(english, h, c, c / total) for h, c in ranked)
            mass = sum(e.prob for e in entries[english])
            if abs(mass - 1.0) > NORMALIZATION_TOL:
                raise InvariantViolation(f"probabilities for {english!r} sum to {mass}")

        self._entries = entries
        self.metadata = dict(metadata or {})
        self.metadata["total_pairs"] = str(sum(sum(row.values()) for row in table.values()))

    def lookup(self, english: str) -> list[tuple[str, float]]:
        """Candidates for ``english`` by probability descending, then codepoint order."""
        return [(e.hindi, e.prob) for e in self._entries.get(english.lower(), ())]

    def entries(self) -> Iterator[KbEntry]:
        for english in sorted(self._entries):
            yield from sorted(self._entries[english], key=lambda e: e.hindi)

    def counts(self) -> dict[tuple[str, str], int]:
        return {(e.english, e.hindi): e.count for e in self.entries()}

    def phonemes(self) -> list[str]:
        return sorted(self._entries)

    def __contains__(self, english: str) -> bool:
        return english.lower() in self._entries

    def __len__(self) -> int:
        return sum(len(v) for v in self._entries.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return self.counts() == other.counts()

    def __repr__(self) -> str:
        return f"KnowledgeBase({len(self._entries)} phonemes, {len(self)} entries)"


def _parse_pair_line(line: str) -> PhonemePair | None:
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    parts = stripped.split("\t")
    if len(parts) != 2:
        raise ValueError(f"expected 2 tab-separated columns, got {len(parts)}")
    return PhonemePair(parts[0].strip(), parts[1].strip())


def ingest_pairs(source: Iterable) -> CountTable:
    """Tally ``Count(english, hindi)`` and ``Count(english)`` over a pair stream.

    ``source`` yields :class:`PhonemePair` objects, ``(english, hindi)``
    tuples, or raw TSV lines (``english<TAB>hindi``; blank lines and ``#``
    comments are ignored). Invalid records are logged with their 1-based
    position and skipped. Raises :class:`EmptySource` if nothing valid
    was read.
    """
    counts = CountTable()
    for lineno, record in enumerate(source, 1):
        try:
            if isinstance(record, PhonemePair):
                pair = record
            elif isinstance(record, str):
                pair = _parse_pair_line(record)
                if pair is None:
                    continue
            else:
                pair = PhonemePair(*record)
        except (TypeError, ValueError) as exc:
            counts.skipped.append((lineno, str(exc)))
            log.warning("skipping record %d: %s", lineno, exc)
            continue
        counts.add(pair.english, pair.hindi)
    if counts.read == 0:
        raise EmptySource("no valid phoneme pairs in source")
    return counts


def estimate(counts: CountTable | Mapping[tuple[str, str], int], source: str = "") -> KnowledgeBase:
    """Turn a count table into a :class:`KnowledgeBase` (relative frequency, no smoothing)."""
    pair_counts = counts.pair_counts if isinstance(counts, CountTable) else counts
    if not pair_counts:
        raise EmptySource("cannot estimate from an empty count table")
    metadata = {
        "source": source,
        "created": datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
    }
    return KnowledgeBase(pair_counts, metadata)


def lookup(kb: KnowledgeBase, english: str) -> list[tuple[str, float]]:
    return kb.lookup(english)


def _open_text(target, mode: str) -> tuple[IO[str], bool]:
    if isinstance(target, (str, os.PathLike)):
        return open(target, mode, encoding="utf-8", newline="\n"), True
    return target, False


def save_kb(kb: KnowledgeBase, destination) -> None:
    """Write ``kb`` as a sorted ``english/hindi/count`` TSV.

    ``destination`` is a path or a writable text stream. Metadata goes into
    leading ``#`` comment lines.
    """
    fh, owned = _open_text(destination, "w")
    try:
        for key in sorted(kb.metadata):
            value = str(kb.metadata[key]).replace("\n", " ")
            fh.write(f"# {key}: {value}\n")
        fh.write("\t".join(KB_HEADER) + "\n")
        for entry in kb.entries():
            fh.write(f"{entry.english}\t{entry.hindi}\t{entry.count}\n")
    finally:
        if owned:
            fh.close()


def load_kb(source) -> KnowledgeBase:
    """Read a KB file written by :func:`save_kb`.

    Raises :class:`ParseError` (with line number) on bad rows, negative
    counts or duplicate keys, and :class:`InvariantViolation` if a phoneme's
    probabilities cannot be normalised.
    """
    fh, owned = _open_text(source, "r")
    try:
        return _read_kb(fh)
    finally:
        if owned:
            fh.close()


def _read_kb(lines: Iterable[str]) -> KnowledgeBase:
    metadata: dict[str, str] = {}
    counts: dict[tuple[str, str], int] = {}
    header_seen = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                metadata[key.strip()] = value.strip()
            continue
        parts = line.split("\t")
        if not header_seen:
            if tuple(p.strip() for p in parts) != KB_HEADER:
                raise ParseError(f"expected header {'/'.join(KB_HEADER)}", lineno)
            header_seen = True
            continue
        if len(parts) != 3:
            raise ParseError(f"expected 3 columns, got {len(parts)}", lineno)
        english, hindi, count_text = (p.strip() for p in parts)
        try:
            pair = PhonemePair(english, hindi)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        try:
            count = int(count_text)
        except ValueError:
            raise ParseError(f"count is not an integer: {count_text!r}", lineno) from None
        if count < 0:
            raise ParseError(f"negative count {count}", lineno)
        key = (pair.english, pair.hindi)
        if key in counts:
            raise ParseError(f"duplicate entry ({pair.english}, {pair.hindi})", lineno)
        counts[key] = count
    if not header_seen:
        raise ParseError("missing header line")
    if not counts:
        raise ParseError("knowledge base has no entries")
    metadata.pop("total_pairs", None)
    return KnowledgeBase(counts, metadata)


def loads_kb(text: str) -> KnowledgeBase:
    return _read_kb(io.StringIO(text))


def dumps_kb(kb: KnowledgeBase) -> str:
    buf = io.StringIO()
    save_kb(kb, buf)
    return buf.getvalue()


def align_word_pair(
    english_word: str,
    hindi_word: str,
    digraphs: Iterable[str] = DEFAULT_DIGRAPHS,
) -> list[PhonemePair] | None:
    """Zip English chunks with Hindi aksharas position by position.

    Returns ``None`` (unalignable) when the chunk and akshara counts differ
    or either side is not a valid word.
    """
    try:
        chunks = segment_word(english_word, digraphs).surfaces
    except EmptyWord:
        return None
    aksharas = split_aksharas(hindi_word.strip())
    if len(chunks) != len(aksharas):
        return None
    try:
        return [PhonemePair(e, h) for e, h in zip(chunks, aksharas)]
    except ValueError:
        return None


@dataclass
class AlignStats:
    read: int = 0
    aligned: int = 0
    unalignable: list[tuple[int, str, str]] = field(default_factory=list)
    skipped: list[tuple[int, str]] = field(default_factory=list)


def iter_word_pairs(lines: Iterable[str]) -> Iterator[tuple[int, str, str]]:
    """Yield ``(lineno, english, hindi)`` from an ``english_word<TAB>hindi_word`` TSV."""
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ParseError("expected english_word<TAB>hindi_word", lineno)
        yield lineno, parts[0].strip(), nfc(parts[1].strip())


def align_corpus(
    lines: Iterable[str],
    digraphs: Iterable[str] = DEFAULT_DIGRAPHS,
    stats: AlignStats | None = None,
) -> Iterator[PhonemePair]:
    """Stream phoneme pairs out of a word-pair corpus, counting failures in ``stats``."""
    stats = stats if stats is not None else AlignStats()
    digraphs = tuple(digraphs)
    for lineno, raw in enumerate(lines, 1):
        try:
            parsed = list(iter_word_pairs([raw]))
        except ParseError as exc:
            stats.skipped.append((lineno, str(exc)))
            log.warning("skipping word pair on line %d: %s", lineno, exc)
            continue
        if not parsed:
            continue
        _, english, hindi = parsed[0]
        stats.read += 1
        pairs = align_word_pair(english, hindi, digraphs)
        if pairs is None:
            stats.unalignable.append((lineno, english, hindi))
            log.info("unalignable pair on line %d: %s / %s", lineno, english, hindi)
            continue
        stats.aligned += 1
        yield from pairs
