"""Translation edit rate with block shifts, against one or many references.

Matching can be performed on surface forms or on lemmas; every aligned
match additionally records whether the surfaces are character-identical,
which downstream error classification relies on.

The shift search is greedy: starting from the minimum-edit alignment it
repeatedly applies the legal block move that removes the most remaining
edits (each move costs one edit), until no move helps.  See
:mod:`edeval._kernels` for the legality constraints and tie-breaking.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .corpus import Document, ReferenceSet, Segment, Token
from .errors import AnnotationError, ShapeError

__all__ = [
    "MatchMode",
    "EditKind",
    "EditOp",
    "EditScript",
    "TerScore",
    "SegmentTer",
    "ter_single",
    "mter",
    "corpus_ter",
    "corpus_ter_detailed",
    "corpus_ter_segment_average",
    "ter_corpus_score",
]

THREADS_ENV_VAR = "EDEVAL_THREADS"


class MatchMode(Enum):
    SURFACE = "surface"
    LEMMA = "lemma"


class EditKind(Enum):
    MATCH = "match"
    SUBSTITUTION = "substitution"
    INSERTION = "insertion"
    DELETION = "deletion"
    SHIFT_MATCH = "shift_match"


@dataclass(frozen=True, slots=True)
class EditOp:
    """One alignment step.  Indices refer to the original token order.

    INSERTION carries only a reference token, DELETION only a hypothesis
    token; surface_equal is defined for MATCH and SHIFT_MATCH only.
    """

    kind: EditKind
    hyp_index: int | None = None
    ref_index: int | None = None
    hyp_token: Token | None = None
    ref_token: Token | None = None
    surface_equal: bool | None = None

    @property
    def is_edit(self) -> bool:
        return self.kind in (EditKind.SUBSTITUTION, EditKind.INSERTION, EditKind.DELETION)


@dataclass(frozen=True)
class EditScript:
    """Ordered edit operations for one segment plus the applied shift count."""

    ops: tuple[EditOp, ...]
    shift_count: int
    segment_id: int
    mode: MatchMode

    @property
    def edit_count(self) -> int:
        """Substitutions + insertions + deletions + one per block shift."""
        return sum(1 for op in self.ops if op.is_edit) + self.shift_count


@dataclass(frozen=True)
class TerScore:
    """Edit count over a reference-length denominator."""

    edits: int
    denominator: Fraction

    @property
    def score(self) -> float:
        return float(Fraction(self.edits) / self.denominator)


@dataclass(frozen=True)
class SegmentTer:
    """Per-segment result: score, attributed script, chosen reference."""

    score: TerScore
    script: EditScript
    chosen_ref: int


def _segment_keys(seg: Segment, mode: MatchMode, ignore_case: bool, side: str) -> list[str]:
    if mode is MatchMode.LEMMA:
        keys = []
        for i, tok in enumerate(seg.tokens):
            if tok.lemma is None:
                raise AnnotationError(
                    f"lemma matching requires annotation: {side} segment {seg.id}, "
                    f"token {i} ({tok.surface!r}) has no lemma"
                )
            keys.append(tok.lemma)
    else:
        keys = [tok.surface for tok in seg.tokens]
    if ignore_case:
        keys = [k.lower() for k in keys]
    return keys


def _encode(hyp_keys: list[str], ref_keys: list[str]) -> tuple[np.ndarray, np.ndarray]:
    ids: dict[str, int] = {}
    for k in hyp_keys:
        ids.setdefault(k, len(ids))
    for k in ref_keys:
        ids.setdefault(k, len(ids))
    h = np.fromiter((ids[k] for k in hyp_keys), dtype=np.int32, count=len(hyp_keys))
    r = np.fromiter((ids[k] for k in ref_keys), dtype=np.int32, count=len(ref_keys))
    return h, r


def _build_ops(
    hyp: Segment,
    ref: Segment,
    hyp_keys: list[str],
    ref_keys: list[str],
    order: Sequence[int],
    moved: Sequence[int],
) -> tuple[EditOp, ...]:
    """Align the post-shift hypothesis to the reference and emit typed ops.

    Uses the same traceback preference as the kernel (match, substitution,
    insertion, deletion) so scripts are deterministic.
    """
    order = [int(o) for o in order]
    final_keys = [hyp_keys[o] for o in order]
    n, m = len(final_keys), len(ref_keys)
    D = [[0] * (m + 1) for _ in range(n + 1)]
    D[0] = list(range(m + 1))
    for i in range(1, n + 1):
        row = D[i]
        prev = D[i - 1]
        row[0] = i
        ki = final_keys[i - 1]
        for j in range(1, m + 1):
            c = prev[j - 1] + (0 if ki == ref_keys[j - 1] else 1)
            d = prev[j] + 1
            if d < c:
                c = d
            e = row[j - 1] + 1
            if e < c:
                c = e
            row[j] = c

    def match_op(i: int, j: int) -> EditOp:
        orig = order[i]
        h_tok = hyp.tokens[orig]
        r_tok = ref.tokens[j]
        kind = EditKind.SHIFT_MATCH if moved[orig] else EditKind.MATCH
        return EditOp(kind, hyp_index=orig, ref_index=j, hyp_token=h_tok, ref_token=r_tok,
                      surface_equal=h_tok.surface == r_tok.surface)

    rev: list[EditOp] = []
    i, j = n, m
    while i > 0 and j > 0:
        if final_keys[i - 1] == ref_keys[j - 1] and D[i][j] == D[i - 1][j - 1]:
            rev.append(match_op(i - 1, j - 1))
            i -= 1
            j -= 1
        elif D[i][j] == D[i - 1][j - 1] + 1:
            orig = order[i - 1]
            rev.append(EditOp(EditKind.SUBSTITUTION, hyp_index=orig, ref_index=j - 1,
                              hyp_token=hyp.tokens[orig], ref_token=ref.tokens[j - 1]))
            i -= 1
            j -= 1
        elif D[i][j] == D[i][j - 1] + 1:
            rev.append(EditOp(EditKind.INSERTION, ref_index=j - 1, ref_token=ref.tokens[j - 1]))
            j -= 1
        else:
            orig = order[i - 1]
            rev.append(EditOp(EditKind.DELETION, hyp_index=orig, hyp_token=hyp.tokens[orig]))
            i -= 1
    while i > 0:
        orig = order[i - 1]
        rev.append(EditOp(EditKind.DELETION, hyp_index=orig, hyp_token=hyp.tokens[orig]))
        i -= 1
    while j > 0:
        rev.append(EditOp(EditKind.INSERTION, ref_index=j - 1, ref_token=ref.tokens[j - 1]))
        j -= 1
    rev.reverse()
    return tuple(rev)


def _run_kernel(hyp: Segment, ref: Segment, mode: MatchMode, ignore_case: bool):
    hyp_keys = _segment_keys(hyp, mode, ignore_case, "hypothesis")
    ref_keys = _segment_keys(ref, mode, ignore_case, "reference")
    h_ids, r_ids = _encode(hyp_keys, ref_keys)
    edits, shifts, order, moved = _kernels.greedy_shift_ter(h_ids, r_ids)
    return int(edits), int(shifts), order, moved, hyp_keys, ref_keys


def ter_single(
    hyp: Segment,
    ref: Segment,
    mode: MatchMode = MatchMode.SURFACE,
    *,
    ignore_case: bool = False,
) -> tuple[TerScore, EditScript]:
    """TER of one hypothesis segment against one reference segment.

    The denominator is the reference length; an empty reference uses a
    denominator of 1 (so a non-empty hypothesis scores its own length).
    """
    edits, shifts, order, moved, hyp_keys, ref_keys = _run_kernel(hyp, ref, mode, ignore_case)
    ops = _build_ops(hyp, ref, hyp_keys, ref_keys, order, moved)
    script = EditScript(ops=ops, shift_count=shifts, segment_id=hyp.id, mode=mode)
    denominator = Fraction(len(ref.tokens)) if ref.tokens else Fraction(1)
    return TerScore(edits, denominator), script


def mter(
    hyp: Segment,
    refs: Sequence[Segment],
    mode: MatchMode = MatchMode.SURFACE,
    *,
    ignore_case: bool = False,
) -> tuple[TerScore, EditScript, int]:
    """Multi-reference TER: minimum edits across references.

    The denominator is the average reference length (1 if that is zero).
    Returns the score, the edit script against the chosen reference, and
    the chosen reference index (lowest index on ties).
    """
    if not refs:
        raise ValueError("mter needs at least one reference segment")
    best_k = -1
    best = None
    for k, ref in enumerate(refs):
        result = _run_kernel(hyp, ref, mode, ignore_case)
        if best is None or result[0] < best[0]:
            best = result
            best_k = k
    edits, shifts, order, moved, hyp_keys, ref_keys = best
    ops = _build_ops(hyp, refs[best_k], hyp_keys, ref_keys, order, moved)
    script = EditScript(ops=ops, shift_count=shifts, segment_id=hyp.id, mode=mode)
    mean_len = Fraction(sum(len(r.tokens) for r in refs), len(refs))
    denominator = mean_len if mean_len > 0 else Fraction(1)
    return TerScore(edits, denominator), script, best_k


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def corpus_ter_detailed(
    hyps: Document,
    refs: ReferenceSet,
    mode: MatchMode = MatchMode.SURFACE,
    *,
    ignore_case: bool = False,
    threads: int | None = None,
) -> list[SegmentTer]:
    """Score every segment with :func:`mter`, optionally across threads.

    Results are ordered by segment id regardless of scheduling, so corpus
    aggregation downstream is deterministic.
    """
    if len(hyps) != len(refs):
        raise ShapeError(
            f"hypothesis has {len(hyps)} segments but references have {len(refs)}"
        )
    threads = _default_threads() if threads is None else max(1, threads)

    def one(i: int) -> SegmentTer:
        score, script, chosen = mter(
            hyps.segments[i], refs.segment_refs(i), mode, ignore_case=ignore_case
        )
        return SegmentTer(score, script, chosen)

    indices = range(len(hyps))
    if threads == 1 or len(hyps) < 2:
        return [one(i) for i in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, indices))


def ter_corpus_score(stats: Sequence[tuple[int, Fraction]]) -> TerScore:
    """Pool per-segment (edits, denominator) stats into one corpus score."""
    edits = sum(e for e, _ in stats)
    denom = sum((d for _, d in stats), start=Fraction(0))
    if denom == 0:
        denom = Fraction(1)
    return TerScore(edits, denom)


def corpus_ter(
    hyps: Document,
    refs: ReferenceSet,
    mode: MatchMode = MatchMode.SURFACE,
    *,
    ignore_case: bool = False,
    threads: int | None = None,
) -> TerScore:
    """Corpus TER/mTER: summed edits over summed per-segment denominators."""
    detailed = corpus_ter_detailed(hyps, refs, mode, ignore_case=ignore_case, threads=threads)
    return ter_corpus_score([(r.score.edits, r.score.denominator) for r in detailed])


def corpus_ter_segment_average(
    hyps: Document,
    refs: ReferenceSet,
    mode: MatchMode = MatchMode.SURFACE,
    *,
    ignore_case: bool = False,
    threads: int | None = None,
) -> float:
    """Mean of per-segment scores (alternative corpus aggregation)."""
    detailed = corpus_ter_detailed(hyps, refs, mode, ignore_case=ignore_case, threads=threads)
    if not detailed:
        return 0.0
    return sum(r.score.score for r in detailed) / len(detailed)
