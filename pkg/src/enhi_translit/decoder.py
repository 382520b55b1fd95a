"""Maximum-probability decoding of segmented English words into Devanagari.

Each chunk is mapped independently to its most probable Hindi phoneme and the
results are concatenated. Because chunk choices do not interact, this is
also the argmax of the probability product over whole-word candidates.

Chunks unknown to the KB fall back to a static letter table and are flagged
``low_confidence``. Non-letter spans (digits, punctuation) pass through.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .devanagari import VIRAMA, nfc
from .errors import EmptyInput, ParseError
from .knowledge_base import KnowledgeBase
from .ner_io import EntityCategory, TaggedEntity
from .phonology import ASCII_LETTERS, DEFAULT_DIGRAPHS, VOWELS, group_units, segment_word

DEFAULT_SKIP = frozenset({EntityCategory.MISC})

_SPANS = re.compile(r"[A-Za-z]+|[^A-Za-z]+")


class Origin(enum.Enum):
    KB = "KB"
    FALLBACK = "Fallback"
    PASS_THROUGH = "PassThrough"


@dataclass(frozen=True)
class FallbackTable:
    """Letter/digraph → Devanagari table used when the KB has no entry.

    ``consonants`` maps a unit to its bare consonant form. ``vowels`` maps a
    vowel group to ``(independent_form, vowel_sign)``; an empty sign means
    the inherent vowel.
    """

    consonants: Mapping[str, str]
    vowels: Mapping[str, tuple[str, str]]

    def render(self, units: Iterable[str]) -> str:
        units = list(units)
        out: list[str] = []
        i = 0
        after_consonant = False
        while i < len(units):
            unit = units[i]
            if unit in VOWELS:
                group = unit
                pair = "".join(units[i:i + 2])
                if len(pair) == 2 and pair[1] in VOWELS and pair in self.vowels:
                    group = pair
                independent, sign = self.vowels.get(group, ("", ""))
                out.append(sign if after_consonant else independent)
                after_consonant = False
                i += len(group)
                continue
            out.append(self._consonant(unit))
            nxt = units[i + 1] if i + 1 < len(units) else None
            if nxt is not None and nxt not in VOWELS:
                out.append(VIRAMA)
            after_consonant = True
            i += 1
        return nfc("".join(out))

    def _consonant(self, unit: str) -> str:
        if unit in self.consonants:
            return self.consonants[unit]
        # digraph outside the table: spell it letter by letter as a conjunct
        return VIRAMA.join(self.consonants.get(ch, "") for ch in unit if ch in self.consonants)


DEFAULT_FALLBACK = FallbackTable(
    consonants={
        "b": "ब", "c": "क", "d": "द", "f": "फ़", "g": "ग", "h": "ह",
        "j": "ज", "k": "क", "l": "ल", "m": "म", "n": "न", "p": "प",
        "q": "क़", "r": "र", "s": "स", "t": "त", "v": "व", "w": "व",
        "x": "क्स", "y": "य", "z": "ज़",
        "bh": "भ", "ch": "च", "dh": "ध", "gh": "घ", "jh": "झ",
        "kh": "ख", "ph": "फ", "sh": "श", "th": "थ", "lh": "ल्ह",
    },
    vowels={
        "a": ("अ", ""), "aa": ("आ", "ा"),
        "i": ("इ", "ि"), "ii": ("ई", "ी"), "ee": ("ई", "ी"),
        "u": ("उ", "ु"), "uu": ("ऊ", "ू"), "oo": ("ऊ", "ू"),
        "e": ("ए", "े"), "ai": ("ऐ", "ै"),
        "o": ("ओ", "ो"), "au": ("औ", "ौ"), "ou": ("औ", "ौ"),
    },
)


def load_fallback_table(path) -> FallbackTable:
    """Read a fallback table TSV.

    Consonant rows are ``unit<TAB>form``; vowel rows are
    ``unit<TAB>independent<TAB>sign`` (sign may be empty for the inherent
    vowel). Rows override the built-in table.
    """
    consonants = dict(DEFAULT_FALLBACK.consonants)
    vowels = dict(DEFAULT_FALLBACK.vowels)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            unit = parts[0].strip().lower()
            if not unit.isascii() or not unit.isalpha():
                raise ParseError(f"bad unit {parts[0]!r}", lineno)
            if all(ch in VOWELS for ch in unit):
                if len(parts) != 3:
                    raise ParseError("vowel rows need unit, independent form and sign", lineno)
                vowels[unit] = (nfc(parts[1].strip()), nfc(parts[2].strip()))
            else:
                if len(parts) != 2:
                    raise ParseError("consonant rows need unit and form", lineno)
                consonants[unit] = nfc(parts[1].strip())
    return FallbackTable(consonants, vowels)


@dataclass(frozen=True)
class ChunkChoice:
    english: str
    hindi: str
    prob: float | None
    origin: Origin


@dataclass(frozen=True)
class TransliterationResult:
    source: str
    hindi: str
    per_chunk: tuple[ChunkChoice, ...]
    confidence: float
    low_confidence: bool


def choose_phoneme(
    kb: KnowledgeBase,
    chunk: str,
    fallback: FallbackTable = DEFAULT_FALLBACK,
    digraphs: Iterable[str] = DEFAULT_DIGRAPHS,
) -> ChunkChoice:
    """Pick the most probable Hindi phoneme for ``chunk``, or fall back."""
    if not chunk:
        raise EmptyInput("empty chunk")
    candidates = kb.lookup(chunk)
    if candidates:
        hindi, prob = candidates[0]
        return ChunkChoice(chunk.lower(), hindi, prob, Origin.KB)
    rendered = fallback.render(group_units(chunk.lower(), digraphs))
    return ChunkChoice(chunk.lower(), rendered, None, Origin.FALLBACK)


def transliterate_word(
    kb: KnowledgeBase,
    word: str,
    fallback: FallbackTable = DEFAULT_FALLBACK,
    digraphs: Iterable[str] = DEFAULT_DIGRAPHS,
) -> TransliterationResult:
    """Transliterate one whitespace-free token.

    Letter spans are segmented and decoded; spans without ASCII letters
    (``"1592"``, ``"-"``) are copied through unchanged.
    """
    if not word:
        raise EmptyInput("cannot transliterate an empty string")
    digraphs = tuple(digraphs)
    choices: list[ChunkChoice] = []
    for span in _SPANS.findall(word):
        if span[0] not in ASCII_LETTERS:
            choices.append(ChunkChoice(span, span, None, Origin.PASS_THROUGH))
            continue
        for chunk in segment_word(span, digraphs).chunks:
            choices.append(choose_phoneme(kb, chunk.surface, fallback, digraphs))

    kb_probs = [c.prob for c in choices if c.origin is Origin.KB]
    low = any(c.origin is not Origin.KB for c in choices)
    return TransliterationResult(
        source=word,
        hindi="".join(c.hindi for c in choices),
        per_chunk=tuple(choices),
        confidence=math.prod(kb_probs, start=1.0),
        low_confidence=low,
    )


@dataclass(frozen=True)
class EntityResult:
    entity: TaggedEntity
    output: str | None  # None means the entity was skipped (NoOutput)
    tokens: tuple[TransliterationResult, ...] = field(default=())

    @property
    def confidence(self) -> float | None:
        if self.output is None:
            return None
        return math.prod((t.confidence for t in self.tokens), start=1.0)

    @property
    def low_confidence(self) -> bool:
        return any(t.low_confidence for t in self.tokens)


def transliterate_entity(
    kb: KnowledgeBase,
    entity: TaggedEntity,
    skip: Iterable[EntityCategory] = DEFAULT_SKIP,
    fallback: FallbackTable = DEFAULT_FALLBACK,
    digraphs: Iterable[str] = DEFAULT_DIGRAPHS,
) -> EntityResult:
    """Transliterate a tagged entity token by token.

    Entities whose category is in ``skip`` produce no output.
    """
    if entity.category in frozenset(skip):
        return EntityResult(entity, None)
    digraphs = tuple(digraphs)
    tokens = tuple(transliterate_word(kb, tok, fallback, digraphs) for tok in entity.text.split())
    return EntityResult(entity, " ".join(t.hindi for t in tokens), tokens)
