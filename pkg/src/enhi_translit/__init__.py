"""English to Hindi named-entity transliteration.

Romanized words are split into consonant/vowel chunks, each chunk is mapped
to its most probable Devanagari rendering from a relative-frequency
knowledge base, and the renderings are concatenated.

    >>> from enhi_translit import load_seed_kb, transliterate_word
    >>> transliterate_word(load_seed_kb(), "Bhopal").hindi
    'भोपाल'
"""

from .cli import load_seed_kb, pipeline, run
from .decoder import (
    DEFAULT_FALLBACK,
    DEFAULT_SKIP,
    ChunkChoice,
    EntityResult,
    FallbackTable,
    Origin,
    TransliterationResult,
    choose_phoneme,
    transliterate_entity,
    transliterate_word,
)
from .devanagari import split_aksharas
from .errors import (
    EmptyEvaluation,
    EmptyInput,
    EmptySource,
    EmptyWord,
    InvariantViolation,
    MalformedTag,
    ParseError,
    TranslitError,
    UnknownCategory,
)
from .evaluation import (
    Counts,
    EvalRecord,
    EvalReport,
    per_category_report,
    read_eval_tsv,
    render_report,
    score,
)
from .knowledge_base import (
    CountTable,
    KbEntry,
    KnowledgeBase,
    PhonemePair,
    align_word_pair,
    estimate,
    ingest_pairs,
    load_kb,
    lookup,
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
from .phonology import (
    CharClass,
    ChunkPattern,
    PhonemeChunk,
    SegmentedWord,
    classify_char,
    classify_chunk,
    group_units,
    segment_word,
)

__version__ = "0.1.0"
