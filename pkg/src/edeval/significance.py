"""Pairwise significance testing via approximate randomization, plus
bootstrap confidence intervals.

Both tests resample per-segment *sufficient statistics* and recompute the
corpus score from the resampled sums, so scores inside a trial are exactly
the corpus-level metric, never an average of segment scores.

Determinism contract: trials are generated from counter-based Philox
streams keyed by (seed, chunk index) over fixed-size chunks, and all
reductions use numpy's pairwise summation.  Results are therefore
bit-identical across runs, machines and thread counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import bleu as _bleu
from . import ter as _ter
from .errors import ShapeError

__all__ = [
    "SignificanceResult",
    "TerSegmentStats",
    "approx_randomization",
    "ar_trial_diffs",
    "p_value_from_diffs",
    "bootstrap_ci",
    "METRICS",
]

TerSegmentStats = tuple[int, Fraction]

_CHUNK_BYTES = 32 * 1024 * 1024  # cap on one chunk's scratch arrays
_AR_TAG = 0x6172  # domain separation of the two resamplers
_BOOT_TAG = 0x6273


@dataclass(frozen=True)
class SignificanceResult:
    metric: str
    observed_diff: float
    p_value: float
    trials: int
    seed: int
    score_a: float
    score_b: float


class _TerAdapter:
    name = "ter"

    @staticmethod
    def exact_score(stats: Sequence[TerSegmentStats]) -> float:
        return _ter.ter_corpus_score(stats).score

    @staticmethod
    def to_array(stats: Sequence[TerSegmentStats]) -> np.ndarray:
        return np.array([[float(e), float(d)] for e, d in stats], dtype=np.float64)

    @staticmethod
    def scores_from_sums(sums: np.ndarray) -> np.ndarray:
        edits = sums[:, 0]
        denom = np.where(sums[:, 1] == 0.0, 1.0, sums[:, 1])
        return edits / denom


class _BleuAdapter:
    name = "bleu"

    @staticmethod
    def exact_score(stats: Sequence[_bleu.BleuStats]) -> float:
        return _bleu.bleu_corpus_score(_bleu.sum_stats(stats)).score

    @staticmethod
    def to_array(stats: Sequence[_bleu.BleuStats]) -> np.ndarray:
        return np.array([s.as_tuple() for s in stats], dtype=np.float64)

    @staticmethod
    def scores_from_sums(sums: np.ndarray) -> np.ndarray:
        matches = sums[:, 0:4]
        totals = sums[:, 4:8]
        hyp_len = sums[:, 8]
        ref_len = sums[:, 9]
        safe_totals = np.where(totals > 0.0, totals, 1.0)
        precisions = np.where(totals > 0.0, matches / safe_totals, 0.0)
        any_zero = (precisions == 0.0).any(axis=1)
        safe_p = np.where(precisions > 0.0, precisions, 1.0)
        geo = np.exp(np.log(safe_p).mean(axis=1))
        safe_hyp = np.where(hyp_len > 0.0, hyp_len, 1.0)
        bp = np.where(hyp_len >= ref_len, 1.0, np.exp(1.0 - ref_len / safe_hyp))
        bp = np.where(hyp_len == 0.0, 0.0, bp)
        return np.where(any_zero, 0.0, bp * geo)


METRICS = {a.name: a for a in (_TerAdapter, _BleuAdapter)}


def _adapter(metric: str):
    try:
        return METRICS[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}") from None


def _chunk_rows(n_segments: int, n_cols: int) -> int:
    per_row = max(1, n_segments * n_cols) * 8
    return max(1, min(8192, _CHUNK_BYTES // per_row))


def _chunk_rng(seed: int, tag: int, chunk_index: int) -> np.random.Generator:
    key = np.array([(seed ^ tag) & 0xFFFFFFFFFFFFFFFF, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def ar_trial_diffs(a: Sequence, b: Sequence, metric: str, trials: int, seed: int) -> np.ndarray:
    """Score differences of `trials` independent per-segment swap resamples."""
    if len(a) != len(b):
        raise ShapeError(f"stat lists differ in length: {len(a)} vs {len(b)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    adapter = _adapter(metric)
    arr_a = adapter.to_array(a)
    arr_b = adapter.to_array(b)
    n, k = arr_a.shape
    rows = _chunk_rows(n, k)
    diffs = np.empty(trials, dtype=np.float64)
    done = 0
    chunk_index = 0
    while done < trials:
        take = min(rows, trials - done)
        rng = _chunk_rng(seed, _AR_TAG, chunk_index)
        mask = rng.integers(0, 2, size=(take, n), dtype=np.uint8).astype(bool)[:, :, None]
        sums_a = np.where(mask, arr_b[None], arr_a[None]).sum(axis=1)
        sums_b = np.where(mask, arr_a[None], arr_b[None]).sum(axis=1)
        diffs[done:done + take] = (
            adapter.scores_from_sums(sums_a) - adapter.scores_from_sums(sums_b)
        )
        done += take
        chunk_index += 1
    return diffs


def p_value_from_diffs(diffs: np.ndarray, observed_diff: float) -> float:
    """Add-one p-value: (trials with |diff| >= |observed| + 1) / (trials + 1).

    Monotone non-increasing in |observed_diff| for a fixed resample set.
    """
    exceed = int((np.abs(diffs) >= abs(observed_diff)).sum())
    return (exceed + 1) / (len(diffs) + 1)


def approx_randomization(
    a: Sequence,
    b: Sequence,
    metric: str,
    trials: int,
    seed: int,
) -> SignificanceResult:
    """Two-sided approximate randomization test on paired segment stats.

    Each trial independently swaps every segment's statistics between the
    two systems with probability 1/2 and recomputes both corpus scores
    from the summed statistics.
    """
    adapter = _adapter(metric)
    score_a = adapter.exact_score(a)
    score_b = adapter.exact_score(b)
    observed = score_a - score_b
    diffs = ar_trial_diffs(a, b, metric, trials, seed)
    p_value = p_value_from_diffs(diffs, observed)
    return SignificanceResult(metric, observed, p_value, trials, seed, score_a, score_b)


def bootstrap_ci(
    a: Sequence,
    metric: str,
    trials: int,
    seed: int,
    level: float = 0.95,
) -> tuple[float, float]:
    """Percentile bootstrap interval of a corpus score (segment resampling)."""
    if not a:
        raise ValueError("cannot bootstrap empty segment stats")
    if trials < 100:
        raise ValueError("bootstrap needs at least 100 trials")
    if not 0.0 < level < 1.0:
        raise ValueError("level must be in (0, 1)")
    adapter = _adapter(metric)
    arr = adapter.to_array(a)
    n, k = arr.shape
    rows = _chunk_rows(n, k)
    scores = np.empty(trials, dtype=np.float64)
    done = 0
    chunk_index = 0
    while done < trials:
        take = min(rows, trials - done)
        rng = _chunk_rng(seed, _BOOT_TAG, chunk_index)
        idx = rng.integers(0, n, size=(take, n))
        sums = arr[idx].sum(axis=1)
        scores[done:done + take] = adapter.scores_from_sums(sums)
        done += take
        chunk_index += 1
    low = float(np.percentile(scores, 100.0 * (1.0 - level) / 2.0))
    high = float(np.percentile(scores, 100.0 * (1.0 + level) / 2.0))
    return low, high
