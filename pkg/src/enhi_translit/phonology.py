"""Segmentation of romanized words into consonant/vowel phoneme chunks.

A word is first broken into *units*: single vowels, single consonants, or a
known consonant digraph (``bh``, ``sh`` ...) that stands for one Hindi
consonant. Units are then grouped onset-first: every chunk is a run of
consonant units followed by a run of vowel units (``C*V+``). Consonants left
over at the end of the word form one final all-consonant chunk::

    >>> [c.surface for c in segment_word("Bhopal").chunks]
    ['bho', 'pa', 'l']
    >>> [c.surface for c in segment_word("Delhi").chunks]
    ['de', 'lhi']

Only ASCII letters take part in segmentation; anything else is dropped here
and handled by the decoder as pass-through text.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyWord

__all__ = [
    "CharClass",
    "ChunkPattern",
    "DEFAULT_DIGRAPHS",
    "PhonemeChunk",
    "SegmentedWord",
    "classify_char",
    "classify_chunk",
    "group_units",
    "segment_word",
]

VOWELS = frozenset("aeiou")
ASCII_LETTERS = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")

DEFAULT_DIGRAPHS: tuple[str, ...] = (
    "bh", "ch", "dh", "gh", "jh", "kh", "ph", "sh", "th", "lh",
)


class CharClass(enum.Enum):
    VOWEL = "V"
    CONSONANT = "C"
    OTHER = "Other"


class ChunkPattern(enum.Enum):
    # Seven combinations of the original pattern table.
    V = "V"
    CV = "CV"
    VC = "VC"
    CVC = "CVC"
    CCVC = "CCVC"
    CVCC = "CVCC"
    VCC = "VCC"
    # Extensions produced by onset-first segmentation.
    C = "C"
    CC = "CC"
    CCV = "CCV"
    OTHER = "Other"


_PATTERNS_BY_SHAPE = {p.value: p for p in ChunkPattern if p is not ChunkPattern.OTHER}


def classify_char(c: str) -> CharClass:
    """Return the class of a single character.

    ``a e i o u`` are vowels in either case; every other ASCII letter
    (including ``y`` and ``w``) is a consonant. Anything else is ``OTHER``.
    """
    if c in ASCII_LETTERS:
        return CharClass.VOWEL if c.lower() in VOWELS else CharClass.CONSONANT
    return CharClass.OTHER


def _unit_class(unit: str | CharClass) -> CharClass:
    if isinstance(unit, CharClass):
        return unit
    if unit in ("C", "V"):
        return CharClass(unit)
    return classify_char(unit[0]) if unit else CharClass.OTHER


def group_units(word: str, digraphs: Iterable[str] = DEFAULT_DIGRAPHS) -> list[str]:
    """Split a lowercase letter string into vowel, consonant and digraph units.

    Digraphs are matched greedily left to right, so ``"shh"`` becomes
    ``["sh", "h"]``.
    """
    digraph_set = {d.lower() for d in digraphs}
    units: list[str] = []
    i = 0
    n = len(word)
    while i < n:
        pair = word[i:i + 2].lower()
        if len(pair) == 2 and pair in digraph_set:
            units.append(pair)
            i += 2
        else:
            units.append(word[i].lower())
            i += 1
    return units


def classify_chunk(units: Sequence[str | CharClass]) -> ChunkPattern:
    """Map a unit sequence to its :class:`ChunkPattern`.

    Units may be unit strings (``"bh"``, ``"o"``) or already-tagged
    ``CharClass`` values / ``"C"`` / ``"V"`` markers. A run of adjacent vowel
    units counts as one vowel group, so ``"raa"`` is ``CV`` just like
    ``"ra"``. Consonant units are never merged.
    """
    shape: list[str] = []
    for unit in units:
        cls = _unit_class(unit)
        if cls is CharClass.OTHER:
            return ChunkPattern.OTHER
        if cls is CharClass.VOWEL and shape and shape[-1] == "V":
            continue
        shape.append(cls.value)
    return _PATTERNS_BY_SHAPE.get("".join(shape), ChunkPattern.OTHER)


@dataclass(frozen=True)
class PhonemeChunk:
    surface: str
    pattern: ChunkPattern
    index: int
    units: tuple[str, ...] = ()


@dataclass(frozen=True)
class SegmentedWord:
    original: str
    chunks: tuple[PhonemeChunk, ...]

    @property
    def surfaces(self) -> list[str]:
        return [c.surface for c in self.chunks]

    @property
    def patterns(self) -> list[ChunkPattern]:
        return [c.pattern for c in self.chunks]

    @property
    def cased_surfaces(self) -> list[str]:
        """Chunk surfaces with the casing of ``original`` restored (``Ra|me|sh``)."""
        letters = "".join(ch for ch in self.original if ch in ASCII_LETTERS)
        out, pos = [], 0
        for c in self.chunks:
            out.append(letters[pos:pos + len(c.surface)])
            pos += len(c.surface)
        return out


def segment_word(word: str, digraphs: Iterable[str] = DEFAULT_DIGRAPHS) -> SegmentedWord:
    """Segment ``word`` into onset-maximal ``C*V+`` chunks.

    Non-letters are stripped first; :class:`EmptyWord` is raised if nothing
    is left.
    """
    letters = "".join(ch for ch in word if ch in ASCII_LETTERS).lower()
    if not letters:
        raise EmptyWord(f"no Latin letters in {word!r}")

    groups: list[list[str]] = []
    current: list[str] = []
    seen_vowel = False
    for unit in group_units(letters, digraphs):
        is_vowel = _unit_class(unit) is CharClass.VOWEL
        if not is_vowel and seen_vowel:
            groups.append(current)
            current, seen_vowel = [], False
        current.append(unit)
        seen_vowel = seen_vowel or is_vowel
    groups.append(current)

    chunks = tuple(
        PhonemeChunk("".join(units), classify_chunk(units), i, tuple(units))
        for i, units in enumerate(groups)
    )
    return SegmentedWord(word, chunks)
