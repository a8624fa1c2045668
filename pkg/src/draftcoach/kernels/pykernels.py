"""Pure-Python token-stream kernels.

Reference implementation of the hot inner loops behind the lexical metrics.
The compiled twin in ``_ckernels.pyx`` must return bit-identical floats, so
both backends accumulate integer sums and divide once, in the same order.

Token streams arrive as sequences of non-negative int ids (interned lemmas);
``vocab_size`` is an exclusive upper bound on the ids.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

NAME = "python"


def mattr_sum(ids: Sequence[int], window: int, vocab_size: int) -> tuple[int, int]:
    """Sum of distinct-type counts over all sliding windows, plus window count.

    Callers derive the moving-average TTR as ``total / (n_windows * window)``.
    Assumes 1 <= window < len(ids).
    """
    n = len(ids)
    counts = [0] * vocab_size
    distinct = 0
    for i in range(window):
        if counts[ids[i]] == 0:
            distinct += 1
        counts[ids[i]] += 1
    total = distinct
    for i in range(window, n):
        out = ids[i - window]
        counts[out] -= 1
        if counts[out] == 0:
            distinct -= 1
        if counts[ids[i]] == 0:
            distinct += 1
        counts[ids[i]] += 1
        total += distinct
    return total, n - window + 1

def mtld_factor_count(ids: Sequence[int], threshold: float, vocab_size: int) -> float:
    """One-directional MTLD factor count (full factors plus partial factor).

    A factor completes when the running type-token ratio of the current
    segment drops strictly below ``threshold``; the token causing the drop
    closes the segment. A trailing partial segment contributes
    ``(1 - ttr) / (1 - threshold)``.
    """
    stamp = [0] * vocab_size
    epoch = 1
    factors = 0.0
    seg_len = 0
    distinct = 0
    for tid in ids:
        seg_len += 1
        if stamp[tid] != epoch:
            stamp[tid] = epoch
            distinct += 1
        if distinct / seg_len < threshold:
            factors += 1.0
            epoch += 1
            seg_len = 0
            distinct = 0
    if seg_len > 0:
        ttr = distinct / seg_len
        factors += (1.0 - ttr) / (1.0 - threshold)
    return factors


def ngram_overlap(cand: Sequence[int], ref: Sequence[int], n: int) -> tuple[int, int]:
    """Clipped multiset n-gram overlap.

    Returns (number of reference n-grams also in the candidate, counted with
    clipped multiplicity; total number of reference n-grams).
    """
    ref_total = max(len(ref) - n + 1, 0)
    cand_total = max(len(cand) - n + 1, 0)
    if ref_total == 0 or cand_total == 0:
        return 0, ref_total
    ref_counts = Counter(tuple(ref[i : i + n]) for i in range(ref_total))
    match = 0
    cand_counts = Counter(tuple(cand[i : i + n]) for i in range(cand_total))
    for gram, c in cand_counts.items():
        r = ref_counts.get(gram)
        if r:
            match += c if c < r else r
    return match, ref_total
