"""Distinct k-mer counting by prefix doubling.

Every level ``l`` on the ladder is split into a first part ``a = ceil(l/2)``
and a second part ``b = floor(l/2)``. An l-mer is the concatenation of an
a-mer and a b-mer; the a-mer either reaches a single vertex ("white") or a
run of consecutive vertices ("black"), and the two cases are counted
separately:

* white a-mers are counted by ``T^W`` and extended with the pair counts
  ``C_b(w, v)``;
* each black a-mer owns one maximal run ``J``; its continuations are the
  b-mers readable from the part of ``J`` it can reach, i.e. ``T_b`` of a
  smaller interval.

All structures at a level only need the two children, so the number of
levels touched is O(log k). The cost per level is polynomial in ``n`` and
independent of ``k`` apart from the size of the integers involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from typing import Dict, List, Optional, Tuple

from .count_dp import LevelCounts, distinct_total
from .errors import InternalConsistencyError
from .graph import WheelerGraph
from .lcs import LcsData, lcs_from_chains
from .validation import check_k

Interval = Tuple[int, int]  # inclusive vertex range


def split(ell: int) -> Tuple[int, int]:
    """First and second part lengths of a level."""
    return (ell + 1) // 2, ell // 2


def ladder(k: int) -> Tuple[int, ...]:
    """All levels the doubling counter touches for ``k``, ascending."""
    k = check_k(k, minimum=1)
    levels = set()
    stack = [k]
    while stack:
        ell = stack.pop()
        if ell in levels:
            continue
        levels.add(ell)
        if ell > 1:
            stack.extend(split(ell))
    return tuple(sorted(levels))


def ladder_bound(k: int) -> int:
    """Upper bound on ``len(ladder(k))``: ``2*ceil(log2 k) + 2``."""
    return 2 * (k - 1).bit_length() + 2


def _column_prefix(matrix) -> List[List[int]]:
    # pref[v][i] = number of rows u < i with matrix[u][v] true
    n = len(matrix)
    return [list(accumulate((1 if matrix[u][v] else 0 for u in range(n)), initial=0)) for v in range(n)]


def _any_in_rows(pref, lo: int, hi: int, v: int) -> bool:
    col = pref[v]
    return col[hi + 1] - col[lo] > 0


@dataclass(frozen=True)
class PairCounts:
    ell: int
    c: tuple  # c[u][v] = number of distinct ell-mers spelled by u -> v walks

    def __getitem__(self, uv):
        u, v = uv
        return self.c[u][v]


def _adjacency(w: WheelerGraph) -> PairCounts:
    n = w.n
    rows = [[0] * n for _ in range(n)]
    for u, v, _ in w.base.edges:
        rows[u][v] += 1
    return PairCounts(1, tuple(tuple(r) for r in rows))


def _compose(x: PairCounts, y: PairCounts) -> PairCounts:
    # walks of length a+b decompose uniquely at their a-th vertex, and in a
    # deterministic graph distinct walks from u spell distinct strings
    n = len(x.c)
    cols = list(zip(*y.c)) if n else []
    rows = []
    for u in range(n):
        xu = x.c[u]
        nz = [(wv, cnt) for wv, cnt in enumerate(xu) if cnt]
        rows.append(tuple(sum(cnt * col[wv] for wv, cnt in nz) for col in cols))
    return PairCounts(x.ell + y.ell, tuple(rows))


def pairwise_counts(w: WheelerGraph, ell: int, _cache: Optional[Dict[int, PairCounts]] = None) -> PairCounts:
    """``C_l(u, v)`` for all pairs, composed along the ladder of ``l``."""
    ell = check_k(ell, "ell", minimum=1)
    cache = {} if _cache is None else _cache
    for lev in ladder(ell):
        if lev in cache:
            continue
        if lev == 1:
            cache[1] = _adjacency(w)
        else:
            a, b = split(lev)
            cache[lev] = _compose(cache[a], cache[b])
    return cache[ell]


@dataclass(frozen=True)
class Reachability:
    """``M_l(u, v) = [C_l(u, v) > 0]`` with per-column prefix counts."""

    ell: int
    m: tuple
    _pref: list = field(repr=False, compare=False)

    def any(self, lo: int, hi: int, v: int) -> bool:
        """Whether some ``u`` in ``[lo, hi]`` reaches ``v`` in ``l`` steps."""
        return _any_in_rows(self._pref, lo, hi, v)

    def reached(self, lo: int, hi: int) -> List[int]:
        """``R_l([lo, hi])``: vertices reached from the interval."""
        return [v for v in range(len(self.m)) if self.any(lo, hi, v)]


def reachability(pairs: PairCounts) -> Reachability:
    m = tuple(tuple(c > 0 for c in row) for row in pairs.c)
    return Reachability(pairs.ell, m, _column_prefix(m))


@dataclass(frozen=True)
class BlackIntervals:
    """Maximal runs ``[i, j]``, ``i < j``, whose endpoints share an l-mer.

    Two runs may meet at one vertex when that vertex has distinct smallest
    and largest l-mers, each shared with a different neighbour."""

    ell: int
    intervals: tuple


def black_intervals(lcs: LcsData, ell: int) -> BlackIntervals:
    n = lcs.n
    out = []
    start = None
    for i in range(1, n):
        linked = lcs.share(ell, i - 1, i) if ell else True
        if not linked:
            if start is not None:
                out.append((start, i - 1))
                start = None
            continue
        # the run passes through i-1 only if i-1 carries a single l-mer
        if start is not None and (ell == 0 or lcs.ilcs[i - 1] >= ell):
            continue
        if start is not None:
            out.append((start, i - 1))
        start = i - 1
    if start is not None:
        out.append((start, n - 1))
    return BlackIntervals(ell, tuple(out))


@dataclass(frozen=True)
class DTable:
    """``dinf[u][v]``: the l-suffix of ``inf_v`` exists and a ``u -> v`` walk
    spells it. ``dsup`` likewise for ``sup_v``."""

    ell: int
    dinf: tuple
    dsup: tuple
    _inf_pref: list = field(repr=False, compare=False)
    _sup_pref: list = field(repr=False, compare=False)

    @classmethod
    def from_matrices(cls, ell, dinf, dsup):
        dinf = tuple(tuple(r) for r in dinf)
        dsup = tuple(tuple(r) for r in dsup)
        return cls(ell, dinf, dsup, _column_prefix(dinf), _column_prefix(dsup))

    def inf_any(self, lo: int, hi: int, v: int) -> bool:
        return _any_in_rows(self._inf_pref, lo, hi, v)

    def sup_any(self, lo: int, hi: int, v: int) -> bool:
        return _any_in_rows(self._sup_pref, lo, hi, v)


def d_base(w: WheelerGraph) -> DTable:
    n = w.n
    m = [[False] * n for _ in range(n)]
    for u, v, _ in w.base.edges:
        m[u][v] = True
    return DTable.from_matrices(1, m, m)


def d_tables(w: WheelerGraph, lcs: LcsData, ell: int, first: DTable, second: DTable) -> DTable:
    """Combine the tables at ``a = ceil(l/2)`` (``first``) and
    ``b = floor(l/2)`` (``second``) into level ``l``.

    The b-suffix of ``inf_v`` is readable into ``v`` exactly from the set
    ``M``; its smallest member lies on the infimum chain, so the a-part is
    the a-suffix of that vertex's infimum. Other members of ``M`` carry the
    same a-mer only if it is the single a-mer of the smallest one and they
    share it.
    """
    a, b = split(ell)
    if (first.ell, second.ell) != (a, b):
        raise ValueError(f"level {ell} needs tables at {a} and {b}")
    n = w.n
    dinf = [[False] * n for _ in range(n)]
    dsup = [[False] * n for _ in range(n)]
    for v in range(n):
        m_inf = [x for x in range(n) if second.dinf[x][v]]
        if m_inf:
            lo = m_inf[0]
            extra = []
            if lcs.ilcs[lo] >= a:
                extra = [x for x in m_inf[1:] if lcs.share(a, lo, x)]
            for u in range(n):
                dinf[u][v] = first.dinf[u][lo] or any(first.dinf[u][x] for x in extra)
        m_sup = [x for x in range(n) if second.dsup[x][v]]
        if m_sup:
            hi = m_sup[-1]
            extra = []
            if lcs.ilcs[hi] >= a:
                extra = [x for x in m_sup[:-1] if lcs.share(a, x, hi)]
            for u in range(n):
                dsup[u][v] = first.dsup[u][hi] or any(first.dsup[u][x] for x in extra)
    return DTable.from_matrices(ell, dinf, dsup)


@dataclass
class _Level:
    pairs: PairCounts
    reach: Reachability
    d: DTable
    black: BlackIntervals


class DoublingState:
    """All ladder structures for one graph, plus memoised ``T`` rows."""

    def __init__(self, w: WheelerGraph, k: int, lcs: Optional[LcsData] = None):
        self.k = check_k(k, minimum=1)
        self.w = w
        if lcs is None or lcs.cap < self.k:
            lcs = lcs_from_chains(w, self.k)
        self.lcs = lcs
        self.ladder = ladder(self.k)
        self.levels: Dict[int, _Level] = {}
        pair_cache: Dict[int, PairCounts] = {}
        for ell in self.ladder:
            pairs = pairwise_counts(w, ell, pair_cache)
            if ell == 1:
                d = d_base(w)
            else:
                a, b = split(ell)
                d = d_tables(w, lcs, ell, self.levels[a].d, self.levels[b].d)
            self.levels[ell] = _Level(pairs, reachability(pairs), d, black_intervals(lcs, ell))
        self._t: Dict[Tuple[int, int, int], tuple] = {}

    def tw(self, ell: int, lo: int, hi: int, v: int, t: int) -> int:
        """White l-mers from ``[lo, hi]`` into ``v``: those whose only
        arrival vertex is ``v``. ``t`` is ``T_l([lo, hi], v)``."""
        lcs, n = self.lcs, self.w.n
        d = self.levels[ell].d
        left = v > 0 and lcs.share(ell, v - 1, v)
        right = v < n - 1 and lcs.share(ell, v, v + 1)
        if not (left or right):
            return t
        if lcs.ilcs[v] >= ell:
            # one l-mer at v; both tables describe it
            return t - (1 if d.inf_any(lo, hi, v) else 0)
        return t - (left and d.inf_any(lo, hi, v)) - (right and d.sup_any(lo, hi, v))

    def _black_part(self, ell: int, lo: int, hi: int, run: Interval) -> Optional[Interval]:
        # vertices of the run reached by its shared l-mer from [lo, hi]; the
        # shared l-mer is the largest at the run's first vertex and the
        # smallest at its last, interior vertices carry nothing else
        level = self.levels[ell]
        s, e = run
        keep = []
        for x in range(s, e + 1):
            if x == s:
                ok = level.d.sup_any(lo, hi, x)
            elif x == e:
                ok = level.d.inf_any(lo, hi, x)
            else:
                ok = level.reach.any(lo, hi, x)
            if ok:
                keep.append(x)
        if not keep:
            return None
        if keep[-1] - keep[0] + 1 != len(keep):
            raise InternalConsistencyError(f"arrival set {keep} of a black {ell}-mer is not an interval")
        return keep[0], keep[-1]

    def t_row(self, ell: int, lo: int, hi: int) -> tuple:
        """``T_l([lo, hi], v)`` for every ``v``: distinct l-mers spelled by
        walks that start in ``[lo, hi]`` and end at ``v``."""
        key = (ell, lo, hi)
        row = self._t.get(key)
        if row is not None:
            return row
        n = self.w.n
        if ell == 1:
            reach = self.levels[1].reach
            row = tuple(1 if reach.any(lo, hi, v) else 0 for v in range(n))
        else:
            a, b = split(ell)
            first = self.t_row(a, lo, hi)
            out = [0] * n
            pairs_b = self.levels[b].pairs.c
            for x in range(n):
                if not first[x]:
                    continue
                white = self.tw(a, lo, hi, x, first[x])
                if white:
                    for v, c in enumerate(pairs_b[x]):
                        if c:
                            out[v] += white * c
            for run in self.levels[a].black.intervals:
                part = self._black_part(a, lo, hi, run)
                if part is None:
                    continue
                for v, c in enumerate(self.t_row(b, *part)):
                    out[v] += c
            row = tuple(out)
        self._t[key] = row
        return row

    def level_counts(self, ell: int) -> tuple:
        """Per-vertex ``C_l(v)`` for a ladder level."""
        if ell not in self.levels:
            raise ValueError(f"level {ell} is not on the ladder of {self.k}")
        return self.t_row(ell, 0, self.w.n - 1)


def t_table(state: DoublingState, ell: int, interval: Interval) -> tuple:
    return state.t_row(ell, *interval)


def tw_from_t(state: DoublingState, ell: int, interval: Interval, v: int) -> int:
    lo, hi = interval
    return state.tw(ell, lo, hi, v, state.t_row(ell, lo, hi)[v])


@dataclass(frozen=True)
class DoublingResult:
    k: int
    total: int
    per_vertex: LevelCounts
    levels: int  # number of ladder levels executed


def count_kmers_doubling(w: WheelerGraph, k: int, lcs: Optional[LcsData] = None) -> DoublingResult:
    """Count distinct k-mers of a deterministic Wheeler graph with O(log k)
    ladder levels."""
    k = check_k(k, minimum=1)
    if w.n == 0:
        return DoublingResult(k, 0, LevelCounts(k, ()), 0)
    state = DoublingState(w, k, lcs)
    counts = state.level_counts(k)
    levels = len(state.ladder)
    if levels > ladder_bound(k):
        raise InternalConsistencyError(f"ladder of {k} has {levels} levels")
    return DoublingResult(k, distinct_total(w, state.lcs, counts, k), LevelCounts(k, counts), levels)
