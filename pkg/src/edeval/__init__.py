"""Edit-based machine translation evaluation toolkit.

Corpus BLEU, TER with block shifts against single or multiple references
(surface- or lemma-level matching), fine-grained error profiles derived
from annotated post-edits, baseline-normalized error distributions, and
resampling-based significance tests.
"""

__version__ = "0.1.0"

from .bleu import BleuScore, BleuStats, corpus_bleu, segment_bleu_stats
from .corpus import (
    Document,
    Manifest,
    ReferenceSet,
    Segment,
    Token,
    load_annotated,
    load_manifest,
    load_plain,
    match_eval_subset,
    parse_annotated,
    parse_plain,
    resolve_manifest,
    serialize_annotated,
    serialize_plain,
)
from .errors import AnnotationError, DataError, ParseError, ShapeError
from .significance import SignificanceResult, approx_randomization, bootstrap_ci
from .taxonomy import (
    DeltaReport,
    ErrorCategory,
    ErrorProfile,
    NormalizedProfile,
    classify_edits,
    deltas,
    normalize,
    profile_system,
)
from .ter import (
    EditKind,
    EditOp,
    EditScript,
    MatchMode,
    TerScore,
    corpus_ter,
    corpus_ter_detailed,
    corpus_ter_segment_average,
    mter,
    ter_single,
)

__all__ = [
    "__version__",
    "Token",
    "Segment",
    "Document",
    "ReferenceSet",
    "Manifest",
    "parse_plain",
    "serialize_plain",
    "parse_annotated",
    "serialize_annotated",
    "load_plain",
    "load_annotated",
    "load_manifest",
    "resolve_manifest",
    "match_eval_subset",
    "MatchMode",
    "EditKind",
    "EditOp",
    "EditScript",
    "TerScore",
    "ter_single",
    "mter",
    "corpus_ter",
    "corpus_ter_detailed",
    "corpus_ter_segment_average",
    "BleuStats",
    "BleuScore",
    "segment_bleu_stats",
    "corpus_bleu",
    "ErrorCategory",
    "ErrorProfile",
    "NormalizedProfile",
    "DeltaReport",
    "classify_edits",
    "profile_system",
    "normalize",
    "deltas",
    "SignificanceResult",
    "approx_randomization",
    "bootstrap_ci",
    "DataError",
    "ParseError",
    "AnnotationError",
    "ShapeError",
]
