"""Devanagari script helpers: codepoint classes and akshara splitting.

An akshara here is::

    AKSHARA -> (CONSONANT NUKTA? VIRAMA JOINER?)* CONSONANT NUKTA? VOWEL_SIGN* MODIFIER*
             | (CONSONANT NUKTA? VIRAMA JOINER?)+                    (dead final consonant)
             | INDEPENDENT_VOWEL MODIFIER*
             | any other single codepoint MODIFIER*

where MODIFIER is candrabindu, anusvara or visarga.

    >>> split_aksharas("भोपाल")
    ['भो', 'पा', 'ल']
    >>> split_aksharas("कृष्ण")
    ['कृ', 'ष्ण']
"""

from __future__ import annotations

import unicodedata

ZWNJ = "\u200c"
ZWJ = "\u200d"
VIRAMA = "्"
NUKTA = "़"

_MODIFIERS = frozenset("\u0900\u0901\u0902\u0903")
_JOINERS = frozenset((ZWJ, ZWNJ))


def _in(cp: int, *ranges: tuple[int, int]) -> bool:
    return any(lo <= cp <= hi for lo, hi in ranges)


def is_consonant(ch: str) -> bool:
    cp = ord(ch)
    return _in(cp, (0x0915, 0x0939), (0x0958, 0x095F), (0x0978, 0x097F))


def is_independent_vowel(ch: str) -> bool:
    cp = ord(ch)
    return _in(cp, (0x0904, 0x0914), (0x0960, 0x0961), (0x0972, 0x0977))


def is_vowel_sign(ch: str) -> bool:
    cp = ord(ch)
    return _in(
        cp,
        (0x093A, 0x093B), (0x093E, 0x094C), (0x094E, 0x094F),
        (0x0955, 0x0957), (0x0962, 0x0963),
    )


def is_devanagari_text(s: str) -> bool:
    """True if ``s`` is non-empty and every codepoint is Devanagari or ZWJ/ZWNJ."""
    return bool(s) and all(0x0900 <= ord(ch) <= 0x097F or ch in _JOINERS for ch in s)


def nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


def split_aksharas(text: str) -> list[str]:
    """Split Devanagari text into aksharas (orthographic syllables).

    Input is NFC-normalised first. Codepoints outside the grammar (digits,
    danda, Latin) come out as one-character units so the split is total:
    ``"".join(split_aksharas(s)) == nfc(s)`` for every string.
    """
    s = nfc(text)
    out: list[str] = []
    i, n = 0, len(s)

    def take_modifiers(j: int) -> int:
        while j < n and s[j] in _MODIFIERS:
            j += 1
        return j

    while i < n:
        start = i
        ch = s[i]
        if is_consonant(ch):
            while True:
                i += 1
                if i < n and s[i] == NUKTA:
                    i += 1
                if i < n and s[i] == VIRAMA:
                    i += 1
                    if i < n and s[i] in _JOINERS:
                        i += 1
                    if i < n and is_consonant(s[i]):
                        continue
                    break
                while i < n and is_vowel_sign(s[i]):
                    i += 1
                break
            i = take_modifiers(i)
        elif is_independent_vowel(ch):
            i = take_modifiers(i + 1)
        else:
            i = take_modifiers(i + 1)
        out.append(s[start:i])
    return out
