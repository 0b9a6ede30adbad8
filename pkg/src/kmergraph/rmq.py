"""Static range-query helpers: sparse-table minimum, prefix counts, and
per-label rank bitvectors."""
from __future__ import annotations

from itertools import accumulate
from typing import List, Sequence


class SparseTableRMQ:
    """Range minimum over a static integer sequence.

    O(n log n) preprocessing, O(1) queries. Queries are half-open,
    ``query(start, stop)`` covers ``data[start:stop]``; an empty range returns
    ``default``.
    """

    def __init__(self, data: Sequence[int], default=None):
        self.default = default
        self.n = len(data)
        self.table: List[List[int]] = [list(data)]
        width = 1
        while 2 * width <= self.n:
            prev = self.table[-1]
            self.table.append([min(prev[i], prev[i + width]) for i in range(self.n - 2 * width + 1)])
            width *= 2

    def query(self, start: int, stop: int):
        if start < 0 or stop > self.n:
            raise IndexError(f"range [{start}, {stop}) outside 0..{self.n}")
        if start >= stop:
            return self.default
        depth = (stop - start).bit_length() - 1
        row = self.table[depth]
        return min(row[start], row[stop - (1 << depth)])

    __call__ = query


class PrefixCount:
    """Counts of true entries over half-open ranges of a boolean sequence."""

    def __init__(self, flags: Sequence[bool]):
        self.prefix = [0, *accumulate(1 if f else 0 for f in flags)]

    def count(self, start: int, stop: int) -> int:
        if start >= stop:
            return 0
        return self.prefix[stop] - self.prefix[start]

    def any(self, start: int, stop: int) -> bool:
        return self.count(start, stop) > 0


class LabelRank:
    """One rank bitvector per label over the vertex order.

    Bit ``v`` of label ``c`` is set when vertex ``v`` has an out-edge
    labeled ``c``; :meth:`labels_in` lists the distinct out-labels of a
    vertex range in O(sigma).
    """

    def __init__(self, n: int, sigma: int, out_labels: Sequence[Sequence[int]]):
        self.sigma = sigma
        bits = [[False] * n for _ in range(sigma)]
        for v, labels in enumerate(out_labels):
            for c in labels:
                bits[c][v] = True
        self.ranks = [PrefixCount(b) for b in bits]

    def rank(self, c: int, v: int) -> int:
        """Number of vertices before ``v`` with an out-edge labeled ``c``."""
        return self.ranks[c].prefix[v]

    def labels_in(self, lo: int, hi: int) -> List[int]:
        """Distinct out-labels of vertices ``lo..hi`` (inclusive), sorted."""
        return [c for c in range(self.sigma) if self.ranks[c].any(lo, hi + 1)]
