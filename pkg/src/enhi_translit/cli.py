"""Command-line entry point: ``enhi-translit {segment,train,tag,translit,eval}``.

Exit status is 0 on success, 1 on usage errors and 2 on bad input data.
Data goes to stdout, diagnostics to stderr, both UTF-8.
"""

from __future__ import annotations

import argparse
import io
import logging
import re
import sys
from dataclasses import replace
from importlib import resources
from typing import IO, Iterable, Iterator, Sequence

from .config import Config, load_config, parse_digraphs, parse_skip
from .decoder import EntityResult, transliterate_entity
from .errors import TranslitError
from .evaluation import FORMATS, per_category_report, read_eval_tsv, render_report
from .knowledge_base import (
    AlignStats,
    CountTable,
    KnowledgeBase,
    align_corpus,
    estimate,
    ingest_pairs,
    load_kb,
    save_kb,
)
from .ner_io import (
    EntityCategory,
    TaggedEntity,
    TaggedSentence,
    fallback_tag,
    parse_conll,
    parse_inline,
    render_inline,
)
from .phonology import segment_word

log = logging.getLogger("enhi_translit")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

_LOOKS_TAGGED = re.compile(r"\S/\S")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def seed_kb_path():
    return resources.files("enhi_translit") / "data" / "seed_kb.tsv"


def sample_corpus_path():
    return resources.files("enhi_translit") / "data" / "sample_word_pairs.tsv"


def load_seed_kb() -> KnowledgeBase:
    with seed_kb_path().open(encoding="utf-8") as fh:
        return load_kb(fh)


def _fmt_conf(value: float | None) -> str:
    return "-" if value is None else f"{value:.4f}"


def pipeline(
    sentences: Iterable[TaggedSentence],
    kb: KnowledgeBase,
    config: Config = Config(),
) -> Iterator[EntityResult]:
    """Transliterate every entity of every sentence, in input order."""
    for sent in sentences:
        for ent in sent.entities:
            yield transliterate_entity(kb, ent, config.skip, config.fallback, config.digraphs)


def format_entity_line(result: EntityResult, show_chunks: bool = False) -> str:
    ent = result.entity
    fields = [
        str(ent.sentence_id),
        ent.text,
        ent.category.value,
        result.output if result.output is not None else "-",
        _fmt_conf(result.confidence),
    ]
    if show_chunks:
        fields.append(_chunk_column(result))
    return "\t".join(fields)


def _chunk_column(result: EntityResult) -> str:
    if result.output is None:
        return "-"
    return " ".join(
        "|".join(f"{c.english}:{c.hindi}" for c in tok.per_chunk) for tok in result.tokens
    )


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--digraphs", help="comma-separated consonant digraphs (overrides config)")

    parser = _Parser(prog="enhi-translit", description="English to Hindi named-entity transliteration")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("segment", parents=[common], help="split words into phoneme chunks")
    p.add_argument("words", nargs="+")

    p = sub.add_parser("train", parents=[common], help="estimate a KB from pair corpora")
    p.add_argument("--pairs", nargs="+", default=[], help="english<TAB>hindi phoneme pair files")
    p.add_argument("--word-pairs", nargs="+", default=[], help="english_word<TAB>hindi_word files")
    p.add_argument("--out", required=True, help="KB file to write")

    sub.add_parser("tag", parents=[common], help="heuristically tag untagged text from stdin")

    p = sub.add_parser("translit", parents=[common], help="transliterate words or tagged text from stdin")
    p.add_argument("--kb", help="KB file (default: bundled seed KB)")
    p.add_argument("--skip", help="comma-separated categories to leave untransliterated")
    p.add_argument("--show-chunks", action="store_true")
    p.add_argument("--input", choices=("auto", "words", "inline", "conll"), default="auto",
                   help="input format; auto treats lines containing word/Tag tokens as inline")

    p = sub.add_parser("eval", parents=[common], help="score an evaluation TSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=FORMATS)
    return parser


def _resolve_config(args) -> Config:
    config = load_config(args.config) if args.config else Config()
    if getattr(args, "digraphs", None):
        config = replace(config, digraphs=parse_digraphs(args.digraphs))
    if getattr(args, "skip", None) is not None:
        config = replace(config, skip=parse_skip(args.skip))
    if getattr(args, "format", None):
        config = replace(config, format=args.format)
    return config.with_fallback_loaded()


def _cmd_segment(args, config: Config, stdin, stdout) -> int:
    for word in args.words:
        seg = segment_word(word, config.digraphs)
        stdout.write(
            f"{word}\t{'|'.join(seg.cased_surfaces)}\t"
            f"{'|'.join(c.pattern.value for c in seg.chunks)}\n"
        )
    return EXIT_OK


def _cmd_train(args, config: Config, stdin, stdout) -> int:
    if not args.pairs and not args.word_pairs:
        raise UsageError("train: give at least one --pairs or --word-pairs file")
    counts = CountTable()
    stats = AlignStats()
    sources = []
    for path in args.pairs:
        with open(path, encoding="utf-8") as fh:
            try:
                counts.update(ingest_pairs(fh))
            except TranslitError as exc:
                log.warning("%s: %s", path, exc)
        sources.append(path)
    pairs_from_phoneme_files = counts.read
    for path in args.word_pairs:
        with open(path, encoding="utf-8") as fh:
            for pair in align_corpus(fh, config.digraphs, stats):
                counts.add(pair.english, pair.hindi)
        sources.append(path)
    kb = estimate(counts, source=",".join(sources))
    save_kb(kb, args.out)
    stdout.write(f"pairs_read\t{pairs_from_phoneme_files}\n")
    stdout.write(f"pairs_skipped\t{len(counts.skipped)}\n")
    stdout.write(f"word_pairs_read\t{stats.read}\n")
    stdout.write(f"word_pairs_aligned\t{stats.aligned}\n")
    stdout.write(f"word_pairs_unalignable\t{len(stats.unalignable)}\n")
    stdout.write(f"word_pairs_skipped\t{len(stats.skipped)}\n")
    stdout.write(f"kb_phonemes\t{len(kb.phonemes())}\n")
    stdout.write(f"kb_entries\t{len(kb)}\n")
    return EXIT_OK


def _cmd_tag(args, config: Config, stdin, stdout) -> int:
    for i, line in enumerate(_nonblank(stdin)):
        stdout.write(render_inline(fallback_tag(line, i)) + "\n")
    return EXIT_OK


def _nonblank(lines: Iterable[str]) -> Iterator[str]:
    for line in lines:
        line = line.rstrip("\r\n")
        if line.strip():
            yield line


def _cmd_translit(args, config: Config, stdin, stdout) -> int:
    kb = load_kb(args.kb) if args.kb else load_seed_kb()
    if args.input == "conll":
        for result in pipeline(parse_conll(stdin), kb, config):
            stdout.write(format_entity_line(result, args.show_chunks) + "\n")
        return EXIT_OK

    for sid, line in enumerate(_nonblank(stdin)):
        tagged = args.input == "inline" or (args.input == "auto" and _LOOKS_TAGGED.search(line))
        if tagged:
            for result in pipeline([parse_inline(line, sid)], kb, config):
                stdout.write(format_entity_line(result, args.show_chunks) + "\n")
            continue
        # plain words: the whole line is one untyped phrase
        text = line.strip()
        entity = TaggedEntity(text, EntityCategory.PERSON, sid, (0, len(text.split())))
        result = transliterate_entity(kb, entity, (), config.fallback, config.digraphs)
        fields = [text, result.output, _fmt_conf(result.confidence)]
        if args.show_chunks:
            fields.append(_chunk_column(result))
        stdout.write("\t".join(fields) + "\n")
    return EXIT_OK


def _cmd_eval(args, config: Config, stdin, stdout) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        report = per_category_report(read_eval_tsv(fh))
    stdout.write(render_report(report, config.format).decode("utf-8"))
    return EXIT_OK


_COMMANDS = {
    "segment": _cmd_segment,
    "train": _cmd_train,
    "tag": _cmd_tag,
    "translit": _cmd_translit,
    "eval": _cmd_eval,
}


def run(
    argv: Sequence[str] | None = None,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
    stderr: IO[str] | None = None,
) -> int:
    stdin = stdin if stdin is not None else _utf8(sys.stdin)
    stdout = stdout if stdout is not None else _utf8(sys.stdout)
    stderr = stderr if stderr is not None else _utf8(sys.stderr)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(stderr)
            return EXIT_USAGE
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
            stream=stderr,
        )
        try:
            config = _resolve_config(args)
        except ValueError as exc:
            if isinstance(exc, TranslitError):
                raise
            raise UsageError(str(exc)) from None
        return _COMMANDS[args.command](args, config, stdin, stdout)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (TranslitError, OSError, UnicodeDecodeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_DATA


def _utf8(stream):
    if isinstance(stream, io.TextIOWrapper):
        try:
            stream.reconfigure(encoding="utf-8")
        except (AttributeError, ValueError, io.UnsupportedOperation):
            pass
    return stream


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
