"""Bernoulli numbers as exact rationals, with the B_1 = -1/2 convention."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

__all__ = ["bernoulli"]

_cache: list[Fraction] = [Fraction(1)]
_lock = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """B_k via the defining recurrence sum_{j<=m} C(m+1, j) B_j = 0 (m >= 1).

    Memoized; concurrent callers see a consistent table (idempotent writes
    under a lock).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k < len(_cache):
        return _cache[k]
    with _lock:
        while len(_cache) <= k:
            m = len(_cache)
            s = sum(Fraction(comb(m + 1, j)) * _cache[j] for j in range(m))
            _cache.append(-s / (m + 1))
    return _cache[k]
