"""Flat ``key = value`` configuration for the command-line tool."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .decoder import DEFAULT_FALLBACK, DEFAULT_SKIP, FallbackTable, load_fallback_table
from .errors import ParseError
from .evaluation import FORMATS
from .ner_io import EntityCategory
from .phonology import DEFAULT_DIGRAPHS

KNOWN_KEYS = ("digraphs", "skip", "fallback_table", "format")


@dataclass(frozen=True)
class Config:
    digraphs: tuple[str, ...] = DEFAULT_DIGRAPHS
    skip: frozenset = DEFAULT_SKIP
    fallback_table: str | None = None
    format: str = "text"
    fallback: FallbackTable = field(default=DEFAULT_FALLBACK, compare=False, repr=False)

    def with_fallback_loaded(self) -> "Config":
        if self.fallback_table is None:
            return self
        return replace(self, fallback=load_fallback_table(self.fallback_table))


def parse_digraphs(value: str) -> tuple[str, ...]:
    items = tuple(d.strip().lower() for d in value.split(",") if d.strip())
    for d in items:
        if len(d) != 2 or not d.isascii() or not d.isalpha():
            raise ValueError(f"digraph must be two Latin letters: {d!r}")
    return items


def parse_skip(value: str) -> frozenset:
    cats = set()
    for name in value.split(","):
        if not name.strip():
            continue
        try:
            cat = EntityCategory.parse(name)
        except KeyError:
            cat = None
        if cat is None:
            raise ValueError(f"unknown entity category {name.strip()!r}")
        cats.add(cat)
    return frozenset(cats)


def load_config(path) -> Config:
    """Read a config file. Unknown keys are rejected."""
    values: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep:
                raise ParseError("expected key = value", lineno)
            if key not in KNOWN_KEYS:
                raise ParseError(f"unknown config key {key!r}", lineno)
            try:
                if key == "digraphs":
                    values[key] = parse_digraphs(value)
                elif key == "skip":
                    values[key] = parse_skip(value)
                elif key == "format":
                    if value not in FORMATS:
                        raise ValueError(f"format must be one of {', '.join(FORMATS)}")
                    values[key] = value
                else:
                    values[key] = value
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
    return Config(**values)
