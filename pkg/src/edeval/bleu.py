"""Corpus BLEU with multi-bleu.perl semantics.

Modified n-gram precision up to 4-grams, clipped per segment against the
maximum reference count of each n-gram; brevity penalty against the
closest reference length (ties broken toward the shorter); no smoothing
by default, so any zero precision zeroes the score.  Input is assumed
pre-tokenized and is compared case-sensitively unless asked otherwise.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Document, ReferenceSet, Segment
from .errors import ShapeError

__all__ = [
    "MAX_NGRAM_ORDER",
    "BleuStats",
    "BleuScore",
    "segment_bleu_stats",
    "bleu_corpus_score",
    "corpus_bleu",
    "format_multi_bleu_line",
]

MAX_NGRAM_ORDER = 4


@dataclass(frozen=True, slots=True)
class BleuStats:
    """Sufficient statistics of one segment (or a sum of segments)."""

    matches: tuple[int, int, int, int]
    totals: tuple[int, int, int, int]
    hyp_len: int
    ref_len: int

    def __add__(self, other: "BleuStats") -> "BleuStats":
        return BleuStats(
            tuple(a + b for a, b in zip(self.matches, other.matches)),
            tuple(a + b for a, b in zip(self.totals, other.totals)),
            self.hyp_len + other.hyp_len,
            self.ref_len + other.ref_len,
        )

    @classmethod
    def zero(cls) -> "BleuStats":
        return cls((0, 0, 0, 0), (0, 0, 0, 0), 0, 0)

    def as_tuple(self) -> tuple[int, ...]:
        return (*self.matches, *self.totals, self.hyp_len, self.ref_len)


@dataclass(frozen=True)
class BleuScore:
    """Final score (fraction in [0, 1]; reported x100) plus its parts."""

    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    score: float
    hyp_len: int
    ref_len: int


def _ngram_counts(words: Sequence[str], n: int) -> Counter:
    return Counter(tuple(words[i:i + n]) for i in range(len(words) - n + 1))


def _surfaces(seg: Segment, ignore_case: bool) -> list[str]:
    if ignore_case:
        return [t.surface.lower() for t in seg.tokens]
    return [t.surface for t in seg.tokens]


def segment_bleu_stats(
    hyp: Segment, refs: Sequence[Segment], *, ignore_case: bool = False
) -> BleuStats:
    """Clipped n-gram matches, n-gram totals, and effective lengths."""
    if not refs:
        raise ValueError("BLEU needs at least one reference segment")
    hyp_words = _surfaces(hyp, ignore_case)
    ref_words = [_surfaces(r, ignore_case) for r in refs]
    matches = []
    totals = []
    for n in range(1, MAX_NGRAM_ORDER + 1):
        hyp_counts = _ngram_counts(hyp_words, n)
        totals.append(max(len(hyp_words) - n + 1, 0))
        if not hyp_counts:
            matches.append(0)
            continue
        clip: dict[tuple, int] = {}
        for words in ref_words:
            ref_counts = _ngram_counts(words, n)
            for gram in hyp_counts:
                count = ref_counts.get(gram, 0)
                if count > clip.get(gram, 0):
                    clip[gram] = count
        matches.append(sum(min(c, clip.get(g, 0)) for g, c in hyp_counts.items()))
    # Effective reference length: closest to the hypothesis, shorter on ties.
    eff_ref_len = min((len(w) for w in ref_words),
                      key=lambda L: (abs(L - len(hyp_words)), L))
    return BleuStats(tuple(matches), tuple(totals), len(hyp_words), eff_ref_len)


def bleu_corpus_score(stats: BleuStats, *, smooth: bool = False) -> BleuScore:
    """Apply the BLEU formula to summed statistics."""
    precisions = []
    for n in range(MAX_NGRAM_ORDER):
        m, t = stats.matches[n], stats.totals[n]
        if smooth and n > 0:
            precisions.append((m + 1) / (t + 1))
        else:
            precisions.append(m / t if t > 0 else 0.0)
    if stats.hyp_len == 0:
        bp = 0.0
    elif stats.hyp_len >= stats.ref_len:
        bp = 1.0
    else:
        bp = math.exp(1.0 - stats.ref_len / stats.hyp_len)
    if any(p == 0.0 for p in precisions):
        score = 0.0
    else:
        score = bp * math.exp(math.fsum(math.log(p) for p in precisions) / MAX_NGRAM_ORDER)
    return BleuScore(tuple(precisions), bp, score, stats.hyp_len, stats.ref_len)


def corpus_stats(
    hyps: Document, refs: ReferenceSet, *, ignore_case: bool = False
) -> list[BleuStats]:
    if len(hyps) != len(refs):
        raise ShapeError(
            f"hypothesis has {len(hyps)} segments but references have {len(refs)}"
        )
    if len(hyps) == 0:
        raise ValueError("cannot score an empty corpus")
    return [
        segment_bleu_stats(hyps.segments[i], refs.segment_refs(i), ignore_case=ignore_case)
        for i in range(len(hyps))
    ]


def sum_stats(stats: Iterable[BleuStats]) -> BleuStats:
    total = BleuStats.zero()
    for s in stats:
        total = total + s
    return total


def corpus_bleu(
    hyps: Document,
    refs: ReferenceSet,
    *,
    ignore_case: bool = False,
    smooth: bool = False,
) -> BleuScore:
    return bleu_corpus_score(sum_stats(corpus_stats(hyps, refs, ignore_case=ignore_case)),
                             smooth=smooth)


def format_multi_bleu_line(b: BleuScore) -> str:
    """Render the familiar one-line report."""
    p = [x * 100.0 for x in b.precisions]
    ratio = b.hyp_len / b.ref_len if b.ref_len else 0.0
    return (
        f"BLEU = {b.score * 100.0:.2f}, {p[0]:.1f}/{p[1]:.1f}/{p[2]:.1f}/{p[3]:.1f} "
        f"(BP={b.brevity_penalty:.3f}, ratio={ratio:.3f}, "
        f"hyp_len={b.hyp_len}, ref_len={b.ref_len})"
    )
