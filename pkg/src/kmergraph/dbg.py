"""Node-centric de Bruijn graph of the k-mers of a deterministic Wheeler graph.

The (k-1)-mers reaching a vertex ``v`` are its external ones, ``mu`` (the
suffix of ``inf_v``) and ``phi`` (the suffix of ``sup_v``), which may also
reach neighbouring vertices, and its inner ones, which reach ``v`` only.
``F_k(v)`` and ``L_k(v)`` count the left extensions of ``mu`` and ``phi``;
``K(v)`` lists those of each inner (k-1)-mer in colex order. Together with
the per-level counts and cumulative in-neighbour counts these are enough to
look up k-mers, traverse de Bruijn edges and build the graph explicitly.

Vertices are 0-based; ranks ``j`` are 1-based as in a colex-sorted list.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import accumulate
from typing import Dict, List, Optional, Sequence, Tuple

from .count_dp import all_level_counts, distinct_total
from .errors import InternalConsistencyError
from .graph import SOURCE, WheelerGraph
from .lcs import LcsData, compute_levels
from .oracle import ExplicitDbg
from .rmq import LabelRank
from .validation import check_k

Interval = Optional[Tuple[int, int]]  # inclusive vertex range, None if empty


@dataclass(frozen=True)
class IntervalTables:
    """``left[l][v]`` is the arrival interval of ``mu_l(v)``, ``right[l][v]``
    that of ``phi_l(v)``; index 0 is unused."""

    k: int
    left: tuple
    right: tuple


def compute_intervals(w: WheelerGraph, lcs: LcsData, k: int) -> IntervalTables:
    """Left/right intervals for every level ``1..k`` in O(nk).

    ``mu_l(v)`` exists iff ``v`` is not a source and ``mu_{l-1}`` of its
    smallest in-neighbour exists (largest in-neighbour for ``phi``). Its
    interval reaches left as far as ``v`` shares an l-mer, and right as well
    when ``v`` has a single l-mer.
    """
    k = check_k(k)
    n = w.n
    has_inf = [True] * n
    has_sup = [True] * n
    left: List[tuple] = [()]
    right: List[tuple] = [()]
    for ell in range(1, k + 1):
        has_inf = [w.lam[v] != SOURCE and has_inf[w.min_pred(v)] for v in range(n)]
        has_sup = [w.lam[v] != SOURCE and has_sup[w.max_pred(v)] for v in range(n)]
        reach_lo = list(range(n))
        for v in range(1, n):
            if lcs.share(ell, v - 1, v):
                reach_lo[v] = reach_lo[v - 1] if lcs.ilcs[v - 1] >= ell else v - 1
        reach_hi = list(range(n))
        for v in range(n - 2, -1, -1):
            if lcs.share(ell, v, v + 1):
                reach_hi[v] = reach_hi[v + 1] if lcs.ilcs[v + 1] >= ell else v + 1
        lv, rv = [], []
        for v in range(n):
            single = lcs.ilcs[v] >= ell
            lv.append((reach_lo[v], reach_hi[v] if single else v) if has_inf[v] else None)
            rv.append((reach_lo[v] if single else v, reach_hi[v]) if has_sup[v] else None)
        left.append(tuple(lv))
        right.append(tuple(rv))
    return IntervalTables(k, tuple(left), tuple(right))


@dataclass(frozen=True)
class NextPointers:
    """``nxt[l][v][i]``: smallest in-neighbour index ``p > i`` of ``v`` whose
    l-mers are not all l-mers of in-neighbour ``i``; ``indeg(v)`` if none."""

    k: int
    nxt: tuple


def compute_next_pointers(w: WheelerGraph, lcs: LcsData, counts, k: int) -> NextPointers:
    k = check_k(k)
    out: List[tuple] = [()]
    for ell in range(1, k + 1):
        c = counts[ell]
        level = []
        for v in range(w.n):
            preds = w.preds[v]
            d = len(preds)
            row = []
            for i in range(d):
                p = i + 1
                while p < d and c[preds[p]] - (1 if lcs.share(ell, preds[i], preds[p]) else 0) <= 0:
                    p += 1
                row.append(p)
            level.append(tuple(row))
        out.append(tuple(level))
    return NextPointers(k, tuple(out))


def compute_FL(w: WheelerGraph, lcs: LcsData, counts, k: int):
    """``F[l][v]`` and ``L[l][v]`` for ``2 <= l <= k`` (lower slots empty)."""
    k = check_k(k)
    n = w.n
    F: List[tuple] = [(), ()]
    L: List[tuple] = [(), ()]
    if k < 2:
        return F[: k + 1], L[: k + 1]
    F.append(tuple(counts[2]))
    L.append(tuple(counts[2]))
    for ell in range(3, k + 1):
        pf, pl = F[ell - 1], L[ell - 1]
        fv, lv = [0] * n, [0] * n
        for v in range(n):
            preds = w.preds[v]
            if not preds:
                continue
            first, last = preds[0], preds[-1]
            total = pf[first]
            if lcs.ilcs[first] >= ell - 2:
                for j in range(1, len(preds)):
                    if not lcs.share(ell - 2, first, preds[j]):
                        break
                    total += pf[preds[j]] - lcs.share(ell - 1, preds[j - 1], preds[j])
            fv[v] = total
            total = pl[last]
            if lcs.ilcs[last] >= ell - 2:
                for j in range(len(preds) - 2, -1, -1):
                    if not lcs.share(ell - 2, preds[j], last):
                        break
                    total += pl[preds[j]] - lcs.share(ell - 1, preds[j], preds[j + 1])
            lv[v] = total
        F.append(tuple(fv))
        L.append(tuple(lv))
    return F, L


class _KBuilder:
    """Inner-(l-1)-mer extension counts ``Q_l(v)`` by scanning in-neighbours.

    Results are memoised per (vertex, level): the values reported for a
    vertex at a given level never depend on the caller. Recursion is run
    on an explicit stack of generators, so deep levels do not hit Python's
    recursion limit.
    """

    def __init__(self, w, lcs, counts, intervals, nxt, F, L):
        self.w, self.lcs, self.counts = w, lcs, counts
        self.iv, self.nxt, self.F, self.L = intervals, nxt, F, L
        self.memo: Dict[Tuple[int, int], tuple] = {}
        self.calls = 0

    def has_inner(self, v: int, ell: int) -> bool:
        left = self.iv.left[ell][v] is not None
        right = self.iv.right[ell][v] is not None
        ext = left + (self.lcs.ilcs[v] < ell and right)
        return self.counts[ell][v] - ext > 0

    def _last_pred_in(self, preds, interval) -> int:
        return bisect_right(preds, interval[1]) - 1

    def _run_sum(self, v, preds, j, b, ell):
        # L_{l}(u_j) + sum over j < p <= b of F_{l}(u_p) - share_{l}(u_{p-1}, u_p),
        # hopping over in-neighbours that add no new l-mer
        F, lcs = self.F[ell], self.lcs
        nxt = self.nxt.nxt[ell][v]
        total = self.L[ell][preds[j]]
        p = j
        while True:
            p = nxt[p]
            if p > b:
                return total
            total += F[preds[p]] - lcs.share(ell, preds[p - 1], preds[p])

    def _scan(self, v: int, ell: int):
        w, lcs, iv = self.w, self.lcs, self.iv
        m = ell - 2
        preds = w.preds[v]
        d = len(preds)
        nxt = self.nxt.nxt[m][v]
        F = self.F[m + 1]
        out: List[int] = []
        compute_left = False
        j = 0
        while j < d:
            u = preds[j]
            if self.counts[m][u] and lcs.ilcs[u] >= m:
                b = self._last_pred_in(preds, iv.left[m][u])
                if b == d - 1 and lcs.ilcs[preds[-1]] >= m:
                    break  # leads to phi_{l-1}(v)
                if compute_left:
                    out.append(F[u] if b == j else self._run_sum(v, preds, j, b, m + 1))
                compute_left = not (b > j and nxt[j] == b)
            else:
                if iv.left[m][u] is not None and compute_left:
                    out.append(F[u])
                if m >= 2 and self.has_inner(u, m):
                    sub = yield (u, m + 1)
                    out.extend(sub)
                right = iv.right[m][u]
                if right is None:
                    compute_left = True
                else:
                    b = self._last_pred_in(preds, right)
                    if b == j:
                        if j == d - 1:
                            break
                        out.append(self.L[m + 1][u])
                        compute_left = True
                    else:
                        if b == d - 1 and lcs.ilcs[preds[-1]] >= m:
                            break
                        out.append(self._run_sum(v, preds, j, b, m + 1))
                        compute_left = nxt[j] != b
            j = nxt[j]
        return tuple(out)

    def q(self, v: int, ell: int) -> tuple:
        key = (v, ell)
        if key in self.memo:
            return self.memo[key]
        stack = [(key, self._scan(v, ell))]
        result = None
        while stack:
            top_key, gen = stack[-1]
            try:
                req = gen.send(result)
            except StopIteration as stop:
                stack.pop()
                self.memo[top_key] = result = stop.value
                continue
            self.calls += 1
            if req in self.memo:
                result = self.memo[req]
                continue
            result = None
            stack.append((req, self._scan(*req)))
        return self.memo[key]


def compute_K(w: WheelerGraph, lcs: LcsData, counts, intervals, nxt, F, L, k: int):
    """``K(v)`` for every vertex (empty for sinks, sources and ``k <= 2``).
    Returns ``(K, builder)`` so callers can inspect memo statistics."""
    builder = _KBuilder(w, lcs, counts, intervals, nxt, F, L)
    K = []
    for v in range(w.n):
        if k <= 2 or w.lam[v] == SOURCE or w.is_sink(v):
            K.append(())
        else:
            K.append(builder.q(v, k))
    return tuple(K), builder


@dataclass(frozen=True)
class DbgHandle:
    """A k-mer as its arrival interval ``[u, v]`` and its 1-based colex rank
    ``j`` among the k-mers reaching ``u``."""

    u: int
    v: int
    j: int


class DbgData:
    """Everything needed to simulate the de Bruijn graph of order ``k``."""

    def __init__(self, w: WheelerGraph, k: int, lcs: Optional[LcsData] = None):
        k = check_k(k, minimum=2)
        self.w, self.k = w, k
        self.lcs = lcs if lcs is not None and lcs.cap >= k else compute_levels(w, k)
        self.counts = all_level_counts(w, k, self.lcs)
        self.intervals = compute_intervals(w, self.lcs, k)
        self.next = compute_next_pointers(w, self.lcs, self.counts, k)
        self.F, self.L = compute_FL(w, self.lcs, self.counts, k)
        self.K, builder = compute_K(
            w, self.lcs, self.counts, self.intervals, self.next, self.F, self.L, k
        )
        self.recursive_calls = builder.calls
        self.K_prefix = tuple(tuple(accumulate(row)) for row in self.K)
        # cbar[l][v][t]: distinct l-mers over in-neighbours u_0..u_t of v
        cbar: List[tuple] = [()]
        for ell in range(1, k):
            c = self.counts[ell]
            level = []
            for v in range(w.n):
                preds = w.preds[v]
                row, acc = [], 0
                for t, u in enumerate(preds):
                    acc += c[u] - (t > 0 and self.lcs.share(ell, preds[t - 1], u))
                    row.append(acc)
                level.append(tuple(row))
            cbar.append(tuple(level))
        self.cbar = tuple(cbar)
        ck = self.counts[k]
        starts, acc = [], 0
        for v in range(w.n):
            shared = v > 0 and self.lcs.share(k, v - 1, v)
            starts.append(acc - shared)
            acc += ck[v] - shared
        self._start = tuple(starts)  # global index of rank 1 at v, 0-based
        self.total = acc
        if acc != distinct_total(w, self.lcs, ck, k):
            raise InternalConsistencyError("global k-mer numbering disagrees with the count")
        self._labels = LabelRank(w.n, w.sigma, [[c for c, _ in row] for row in w.succs])

    # -- single steps ---------------------------------------------------

    def _extend(self, lo: int, hi: int, r: int, ell: int, c: int):
        """Interval and rank of ``alpha c`` from those of the (l-1)-mer
        ``alpha``; ``ell`` is the new length."""
        step = self.w.forward(lo, hi, c)
        if step is None:
            return None
        x_lo, x_hi, src = step
        if ell == 1:
            return x_lo, x_hi, 1
        if x_lo != x_hi:
            # a string reaching several vertices is the largest at the first
            return x_lo, x_hi, self.counts[ell][x_lo]
        r_src = r if src == lo else 1
        t = self.w.in_rank(x_lo, src)
        if t == 0:
            return x_lo, x_hi, r_src
        preds = self.w.preds[x_lo]
        j = self.cbar[ell - 1][x_lo][t - 1] + r_src - self.lcs.share(ell - 1, preds[t - 1], preds[t])
        return x_lo, x_hi, j

    def handle_of(self, kmer: Sequence[int]) -> Optional[DbgHandle]:
        """Forward search for a k-mer given as label codes."""
        if len(kmer) != self.k:
            raise ValueError(f"expected a {self.k}-mer, got length {len(kmer)}")
        lo, hi, r = 0, self.w.n - 1, 0
        for ell, c in enumerate(kmer, start=1):
            if not 0 <= c < self.w.sigma:
                return None
            step = self._extend(lo, hi, r, ell, c)
            if step is None:
                return None
            lo, hi, r = step
        return DbgHandle(lo, hi, r)

    def outgoing_labels(self, h: DbgHandle) -> List[int]:
        return self._labels.labels_in(h.u, h.v)

    def _contract(self, h: DbgHandle):
        """Interval and rank of the (k-1)-suffix of the handle's k-mer, or
        None when it is an inner (k-1)-mer of a sink."""
        k, u = self.k, h.u
        iv = self.intervals
        if h.u != h.v:
            wl, wr = iv.right[k - 1][u]
            return wl, wr, self.counts[k - 1][wl]
        left = iv.left[k - 1][u]
        if left is not None and h.j <= self.F[k][u]:
            wl, wr = left
            return wl, wr, 1 if wl == u else self.counts[k - 1][wl]
        right = iv.right[k - 1][u]
        if (
            self.lcs.ilcs[u] < k - 1
            and right is not None
            and self.counts[k][u] - self.L[k][u] < h.j
        ):
            return right[0], right[1], self.counts[k - 1][u]
        if self.w.is_sink(u):
            return None
        t = bisect_left(self.K_prefix[u], h.j - self.F[k][u])
        return u, u, (left is not None) + t + 1

    def forward(self, h: DbgHandle, c: int) -> Optional[DbgHandle]:
        """Handle of ``alpha c`` given the handle of ``b alpha``."""
        if not 0 <= c < self.w.sigma:
            return None
        con = self._contract(h)
        if con is None:
            return None
        step = self._extend(*con, self.k, c)
        return None if step is None else DbgHandle(*step)

    # -- global view ----------------------------------------------------

    def index_of(self, h: DbgHandle) -> int:
        """0-based colex position of the handle's k-mer among all k-mers."""
        return self._start[h.u] + h.j - 1

    def spell(self, v: int, j: int, ell: Optional[int] = None) -> tuple:
        """The ``j``-th l-mer reaching ``v`` (default ``l = k``)."""
        ell = self.k if ell is None else ell
        out = []
        while ell > 0:
            out.append(self.w.lam[v])
            preds = self.w.preds[v]
            if ell == 1:
                break
            row = self.cbar[ell - 1][v]
            t = bisect_left(row, j)
            if t:
                j = j - row[t - 1] + self.lcs.share(ell - 1, preds[t - 1], preds[t])
            v = preds[t]
            ell -= 1
        return tuple(reversed(out))

    def kmers(self) -> List[tuple]:
        """All k-mers in colex order."""
        out = []
        ck = self.counts[self.k]
        for v in range(self.w.n):
            first = 2 if v > 0 and self.lcs.share(self.k, v - 1, v) else 1
            out.extend(self.spell(v, j) for j in range(first, ck[v] + 1))
        return out

    def suffix_classes(self):
        """Every (k-1)-mer in colex order as ``(interval, extensions)``,
        with sink-only inner (k-1)-mers folded into one entry per sink."""
        k, w, lcs = self.k, self.w, self.lcs
        iv = self.intervals
        F, L = self.F[k], self.L[k]
        for x in range(w.n):
            left, right = iv.left[k - 1][x], iv.right[k - 1][x]
            single = lcs.ilcs[x] >= k - 1
            if left is not None and left[0] == x:
                yield left, self._interval_extensions(left, F[x])
            if w.is_sink(x):
                inner = self.counts[k][x] - F[x] - (0 if single else L[x])
                if inner:
                    yield (x, x), inner
            else:
                for value in self.K[x]:
                    yield (x, x), value
            if right is not None and not single:
                yield right, self._interval_extensions(right, L[x])

    def _interval_extensions(self, interval, single_value):
        a, b = interval
        if a == b:
            return single_value
        k = self.k
        total = self.L[k][a]
        for p in range(a + 1, b + 1):
            total += self.F[k][p] - self.lcs.share(k, p - 1, p)
        return total

    def k_array_mass(self) -> int:
        """Sum of all K values plus the number of zero entries."""
        return sum(sum(row) + row.count(0) for row in self.K)


def build_explicit_dbg(data: DbgData) -> ExplicitDbg:
    """Materialise the de Bruijn graph from the simulation data alone."""
    w, k = data.w, data.k
    # dst[c]: first k-mer ending in c
    dst = {}
    for v in range(w.n - 1, -1, -1):
        if w.lam[v] != SOURCE:
            dst[w.lam[v]] = data._start[v]
    edges = []
    cur = 0
    for (a, b), ext in data.suffix_classes():
        lo, cur = cur, cur + ext
        for c in data._labels.labels_in(a, b):
            target = dst[c]
            edges.extend((i, target, c) for i in range(lo, cur))
            dst[c] = target + 1
    if cur != data.total:
        raise InternalConsistencyError(f"suffix classes cover {cur} k-mers, expected {data.total}")
    return ExplicitDbg(k, tuple(data.kmers()), tuple(sorted(edges)))


def format_dbg(g: ExplicitDbg, alphabet: str) -> str:
    """``DBG k n m`` header, the k-mers in colex order, then ``i j c`` edges
    with 1-based node indices."""
    lines = [f"DBG {g.k} {len(g.nodes)} {len(g.edges)}"]
    lines.extend("".join(alphabet[c] for c in node) for node in g.nodes)
    lines.extend(f"{i + 1} {j + 1} {alphabet[c]}" for i, j, c in g.edges)
    return "\n".join(lines) + "\n"
