"""Distinct k-mer counting by dynamic programming over walk length."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .graph import SOURCE, WheelerGraph
from .lcs import LcsData, compute_levels
from .validation import check_k


@dataclass(frozen=True)
class LevelCounts:
    ell: int
    c: tuple  # c[v] = number of distinct ell-mers reaching v


@dataclass(frozen=True)
class DpResult:
    k: int
    total: int
    per_vertex: LevelCounts
    iterations: int


def _next_level(w: WheelerGraph, lcs: LcsData, prev: List[int], ell: int) -> List[int]:
    # merge the (ell-1)-mer sets of the sorted in-neighbours; consecutive
    # in-neighbours overlap in at most one string
    cur = [0] * w.n
    for v in range(w.n):
        if w.lam[v] == SOURCE:
            continue
        preds = w.preds[v]
        total = prev[preds[0]]
        for a, b in zip(preds, preds[1:]):
            total += prev[b]
            if prev[a] and prev[b] and lcs.share(ell - 1, a, b):
                total -= 1
        cur[v] = total
    return cur


def iter_level_counts(w: WheelerGraph, k: int, lcs: Optional[LcsData] = None):
    """Yield ``C_l`` as a list for ``l = 0..k``."""
    k = check_k(k)
    if lcs is None:
        lcs = compute_levels(w, k)
    cur = [1] * w.n
    yield cur
    for ell in range(1, k + 1):
        cur = _next_level(w, lcs, cur, ell)
        yield cur


def all_level_counts(w: WheelerGraph, k: int, lcs: Optional[LcsData] = None) -> List[tuple]:
    return [tuple(c) for c in iter_level_counts(w, k, lcs)]


def distinct_total(w: WheelerGraph, lcs: LcsData, counts, k: int) -> int:
    """Distinct k-mers overall from per-vertex counts: strings reaching
    several vertices reach a run of consecutive ones, so subtracting the
    adjacent shares counts each once."""
    if k == 0:
        return 1
    total = sum(counts)
    for i in range(1, w.n):
        if counts[i - 1] and counts[i] and lcs.share(k, i - 1, i):
            total -= 1
    return total


def count_kmers_dp(w: WheelerGraph, k: int, lcs: Optional[LcsData] = None) -> DpResult:
    """Count distinct k-mers of a deterministic Wheeler graph in O(|W| k)."""
    k = check_k(k)
    if lcs is None:
        lcs = compute_levels(w, k)
    iterations = 0
    counts = None
    for counts in iter_level_counts(w, k, lcs):
        iterations += 1
    iterations -= 1  # the level-0 initialisation is not a loop iteration
    return DpResult(k, distinct_total(w, lcs, counts, k), LevelCounts(k, tuple(counts)), iterations)
