"""Unit-cost edit distance over arbitrary sequences.

Small inputs run a plain two-row DP; larger ones switch to a vectorized
row update so that 512-element column-code sequences stay well under
the 50 ms budget.
"""

from __future__ import annotations

from typing import Hashable, Sequence

import numpy as np

_VECTOR_THRESHOLD = 16384  # len(a) * len(b)


def levenshtein(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Minimal number of insertions, deletions and substitutions."""
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    if la * lb > _VECTOR_THRESHOLD:
        return _levenshtein_np(a, b)
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        ai = a[i - 1]
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if ai == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    return prev[lb]


def _levenshtein_np(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    ids: dict[Hashable, int] = {}
    a_ids = np.array([ids.setdefault(x, len(ids)) for x in a], dtype=np.int64)
    b_ids = np.array([ids.setdefault(x, len(ids)) for x in b], dtype=np.int64)
    lb = len(b_ids)
    offsets = np.arange(lb + 1, dtype=np.int64)
    prev = offsets.copy()
    cand = np.empty(lb + 1, dtype=np.int64)
    for i, ai in enumerate(a_ids, start=1):
        cand[0] = i
        np.minimum(prev[:-1] + (b_ids != ai), prev[1:] + 1, out=cand[1:])
        # resolve the left-to-right insertion dependency:
        # row[j] = min_{k<=j} cand[k] + (j - k)
        prev = np.minimum.accumulate(cand - offsets) + offsets
        cand = np.empty(lb + 1, dtype=np.int64)
    return int(prev[lb])


def text_similarity(a: str, b: str) -> float:
    """1 - levenshtein/max(len); two empty strings are defined as 1.0."""
    m = max(len(a), len(b))
    if m == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / m
