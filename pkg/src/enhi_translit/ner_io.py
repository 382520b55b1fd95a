"""Reading and writing named-entity annotations.

Three entry points produce :class:`TaggedSentence` objects:

* :func:`parse_inline` for slash-tagged text, ``Ram/Person is going to
  Bhopal/Location``;
* :func:`parse_conll` for two-column ``token<TAB>label`` files with optional
  ``B-``/``I-`` prefixes;
* :func:`fallback_tag`, a capitalisation/regex heuristic for untagged text.
  It is a crude stand-in for a real NER system and should only be used when
  no tagger output is available.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import MalformedTag, ParseError, UnknownCategory


class EntityCategory(enum.Enum):
    PERSON = "Person"
    LOCATION = "Location"
    ORGANIZATION = "Organization"
    DATE = "Date"
    TIME = "Time"
    MISC = "Misc"

    @classmethod
    def parse(cls, name: str) -> "EntityCategory | None":
        """Resolve a label (case-insensitive, common aliases allowed).

        Returns ``None`` for the outside label ``O``; raises ``KeyError`` for
        anything unrecognised.
        """
        key = name.strip().lower()
        if key == "o":
            return None
        return _ALIASES[key]


_ALIASES = {c.value.lower(): c for c in EntityCategory}
_ALIASES.update({
    "per": EntityCategory.PERSON,
    "loc": EntityCategory.LOCATION,
    "org": EntityCategory.ORGANIZATION,
    "organisation": EntityCategory.ORGANIZATION,
    "miscellaneous": EntityCategory.MISC,
})

# Lowercase words allowed inside a multi-word entity when the tokens on both
# sides carry the same category ("Institute of Technology").
FUNCTION_WORDS = frozenset({
    "of", "the", "de", "da", "di", "du", "del", "la", "von", "van", "der", "bin",
})


@dataclass(frozen=True)
class TaggedEntity:
    text: str
    category: EntityCategory
    sentence_id: int = 0
    span: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("entity text must be non-empty")
        start, end = self.span
        if not 0 <= start < end:
            raise ValueError(f"bad entity span {self.span}")


@dataclass(frozen=True)
class TaggedSentence:
    tokens: tuple[str, ...]
    entities: tuple[TaggedEntity, ...]
    sentence_id: int = 0

    def __post_init__(self):
        last_end = 0
        for ent in self.entities:
            start, end = ent.span
            if start < last_end or end > len(self.tokens):
                raise ValueError(f"entity span {ent.span} overlaps or exceeds sentence")
            last_end = end


def _group_entities(
    tokens: Sequence[str],
    labels: Sequence[EntityCategory | None],
    sentence_id: int,
    absorb_function_words: bool = True,
    boundaries: Sequence[bool] | None = None,
) -> tuple[TaggedEntity, ...]:
    """Merge runs of same-category labels into entities.

    ``boundaries[i]`` forces a new entity to start at token ``i`` (``B-``).
    """
    n = len(tokens)
    entities = []
    i = 0
    while i < n:
        cat = labels[i]
        if cat is None:
            i += 1
            continue
        j = i + 1
        while j < n:
            if labels[j] == cat and not (boundaries and boundaries[j]):
                j += 1
                continue
            if absorb_function_words:
                k = j
                while k < n and labels[k] is None and tokens[k] in FUNCTION_WORDS:
                    k += 1
                if k > j and k < n and labels[k] == cat:
                    j = k + 1
                    continue
            break
        entities.append(TaggedEntity(" ".join(tokens[i:j]), cat, sentence_id, (i, j)))
        i = j
    return tuple(entities)


_TRAILING_PUNCT = re.compile(r"(.+?)([;,.]+)")


def parse_inline(line: str, sentence_id: int = 0) -> TaggedSentence:
    """Parse slash-tagged text into tokens and merged entities.

    A tag may be followed directly by ``;``, ``,`` or ``.``
    (``Ram/Person; Bhopal/Location``); the punctuation becomes its own
    untagged token.
    """
    tokens: list[str] = []
    labels: list[EntityCategory | None] = []
    for raw in line.split():
        if "/" not in raw:
            tokens.append(raw)
            labels.append(None)
            continue
        word, _, tag = raw.rpartition("/")
        trail = ""
        m = _TRAILING_PUNCT.fullmatch(tag)
        if m:
            tag, trail = m.group(1), m.group(2)
        if not word or not tag:
            raise MalformedTag(raw, len(tokens))
        try:
            category = EntityCategory.parse(tag)
        except KeyError:
            raise UnknownCategory(tag, len(tokens)) from None
        tokens.append(word)
        labels.append(category)
        if trail:
            tokens.append(trail)
            labels.append(None)
    return TaggedSentence(tuple(tokens), _group_entities(tokens, labels, sentence_id), sentence_id)


def render_inline(sentence: TaggedSentence) -> str:
    """Inverse of :func:`parse_inline`: tag every token inside an entity span."""
    tags: dict[int, EntityCategory] = {}
    for ent in sentence.entities:
        for i in range(*ent.span):
            tags[i] = ent.category
    return " ".join(
        f"{tok}/{tags[i].value}" if i in tags else tok
        for i, tok in enumerate(sentence.tokens)
    )


def parse_conll(source: Iterable[str]) -> list[TaggedSentence]:
    """Parse ``token<TAB>label`` lines; blank lines separate sentences.

    Labels are ``O`` or a category name, optionally prefixed ``B-``/``I-``.
    Contiguous tokens of one category form an entity; ``B-`` starts a new
    one. Lines without a tab are split on whitespace. ``-DOCSTART-`` lines
    are ignored.
    """
    sentences: list[TaggedSentence] = []
    tokens: list[str] = []
    labels: list[EntityCategory | None] = []
    starts: list[bool] = []

    def flush():
        if tokens:
            sid = len(sentences)
            ents = _group_entities(tokens, labels, sid, absorb_function_words=False, boundaries=starts)
            sentences.append(TaggedSentence(tuple(tokens), ents, sid))
        tokens.clear()
        labels.clear()
        starts.clear()

    for lineno, raw in enumerate(source, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("-DOCSTART-"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ParseError(f"expected 2 columns (token, label), got {len(parts)}", lineno)
        token, label = parts[0].strip(), parts[1].strip()
        prefix = ""
        if len(label) > 2 and label[1] == "-" and label[0] in "BIbi":
            prefix, label = label[0].upper(), label[2:]
        try:
            category = EntityCategory.parse(label)
        except KeyError:
            raise ParseError(f"unknown label {parts[1].strip()!r}", lineno) from None
        tokens.append(token)
        labels.append(category)
        starts.append(prefix == "B")
    flush()
    return sentences


def render_conll(sentences: Iterable[TaggedSentence]) -> Iterator[str]:
    """Yield CoNLL lines (with ``B-``/``I-`` prefixes) for ``sentences``."""
    for sent in sentences:
        labels = ["O"] * len(sent.tokens)
        for ent in sent.entities:
            start, end = ent.span
            for i in range(start, end):
                labels[i] = ("B-" if i == start else "I-") + ent.category.value
        for tok, label in zip(sent.tokens, labels):
            yield f"{tok}\t{label}\n"
        yield "\n"


_TOKEN = re.compile(r"\d{1,2}:\d{2}|\w+(?:['’]\w+)*|[^\w\s]")
_TIME = re.compile(r"([01]?\d|2[0-3]):[0-5]\d")
_YEAR = re.compile(r"\d{4}")
_ERAS = frozenset({"AD", "BC", "CE", "BCE"})
_SENTENCE_END = frozenset(".!?")


def _capitalized(tok: str) -> bool:
    return tok[:1].isupper() and tok[:1].isalpha()


def fallback_tag(sentence: str, sentence_id: int = 0) -> TaggedSentence:
    """Tag untagged text with simple surface rules.

    * ``HH:MM`` → Time
    * four-digit year, optionally followed by AD/BC/CE/BCE → Date
    * runs of capitalised tokens not at the start of a sentence → Misc
      (lowercase function words between capitalised tokens are kept)

    There is no attempt at Person/Location/Organization distinction.
    """
    tokens = _TOKEN.findall(sentence)
    spans: list[tuple[int, int, EntityCategory]] = []
    n = len(tokens)
    at_start = True
    i = 0
    while i < n:
        tok = tokens[i]
        if _TIME.fullmatch(tok):
            spans.append((i, i + 1, EntityCategory.TIME))
            i += 1
        elif _YEAR.fullmatch(tok):
            j = i + 2 if i + 1 < n and tokens[i + 1] in _ERAS else i + 1
            spans.append((i, j, EntityCategory.DATE))
            i = j
        elif _capitalized(tok):
            j = i + 1
            while j < n:
                if _capitalized(tokens[j]):
                    j += 1
                    continue
                k = j
                while k < n and tokens[k] in FUNCTION_WORDS:
                    k += 1
                if j < k < n and _capitalized(tokens[k]):
                    j = k + 1
                    continue
                break
            if not at_start and tokens[i:j] != ["I"]:
                spans.append((i, j, EntityCategory.MISC))
            i = j
        else:
            i += 1
        at_start = tokens[i - 1] in _SENTENCE_END
    entities = tuple(
        TaggedEntity(" ".join(tokens[a:b]), cat, sentence_id, (a, b)) for a, b, cat in spans
    )
    return TaggedSentence(tuple(tokens), entities, sentence_id)
