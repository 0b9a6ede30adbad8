"""Capped longest-common-suffix arrays of a deterministic Wheeler graph.

``elcs[i]`` is the common suffix length of sup(v_{i-1}) and inf(v_i) and
``ilcs[i]`` that of inf(v_i) and sup(v_i), both capped at ``cap``. Two
vertices ``u < v`` share an l-mer exactly when every ``elcs`` in ``(u, v]``
and every ``ilcs`` in ``(u, v)`` is at least ``l``, so two range-minimum
indexes answer ``share`` in constant time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from .errors import OutOfCap
from .graph import SOURCE, WheelerGraph
from .rmq import PrefixCount, SparseTableRMQ
from .validation import check_k


@dataclass(frozen=True)
class LcsData:
    cap: int
    elcs: tuple  # elcs[0] is unused and fixed at 0
    ilcs: tuple
    _elcs_rmq: SparseTableRMQ = field(repr=False, compare=False)
    _ilcs_rmq: SparseTableRMQ = field(repr=False, compare=False)

    @classmethod
    def from_arrays(cls, cap, elcs, ilcs):
        elcs = tuple(elcs)
        ilcs = tuple(ilcs)
        return cls(
            cap, elcs, ilcs, SparseTableRMQ(elcs, default=cap), SparseTableRMQ(ilcs, default=cap)
        )

    @property
    def n(self):
        return len(self.ilcs)

    def _check_level(self, ell):
        if ell < 0:
            raise ValueError("level must be nonnegative")
        if ell > self.cap:
            raise OutOfCap(f"level {ell} exceeds the cap {self.cap}")

    def share(self, ell: int, u: int, v: int) -> bool:
        """Whether the largest l-mer into ``u`` equals the smallest into ``v``.

        ``share(l, u, u)`` is true by convention; callers guard it with an
        emptiness check where it matters.
        """
        self._check_level(ell)
        if u > v:
            raise ValueError(f"share needs u <= v, got {u} > {v}")
        if ell == 0 or u == v:
            return True
        return self._elcs_rmq(u + 1, v + 1) >= ell and self._ilcs_rmq(u + 1, v) >= ell

    def ilcs_at_least(self, ell: int, v: int) -> bool:
        self._check_level(ell)
        return self.ilcs[v] >= ell

    def as_dict(self):
        return {"cap": self.cap, "elcs": list(self.elcs[1:]), "ilcs": list(self.ilcs)}


def compute_levels(w: WheelerGraph, k: int) -> LcsData:
    """Derive capped ELCS/ILCS by sweeping levels ``1..k``.

    Level ``l`` predicates follow from level ``l-1`` ones: adjacent vertices
    share an l-mer iff their incoming labels agree and their max/min
    in-neighbours shared an (l-1)-mer; a vertex has a single l-mer iff its
    min and max in-neighbours both had a single (l-1)-mer and shared it. The
    non-adjacent share queries at level ``l-1`` go through prefix counts of
    the failing positions, rebuilt per level. O(|W| k) time.
    """
    k = check_k(k)
    n = w.n
    lam = w.lam
    elcs = [0] * n
    ilcs = [0] * n
    share = [True] * n  # share[i]: v_{i-1} and v_i at the current level; slot 0 unused

    single = [True] * n
    alive_e = [i for i in range(1, n)]
    alive_i = list(range(n))

    for ell in range(1, k + 1):
        bad_e = PrefixCount([not s for s in share])
        bad_i = PrefixCount([not s for s in single])

        def prev_share(u, v):
            return u == v or (not bad_e.any(u + 1, v + 1) and not bad_i.any(u + 1, v))

        new_share = [False] * n
        new_single = [False] * n
        for i in alive_e:
            a, b = i - 1, i
            if lam[a] == SOURCE or lam[b] == SOURCE or lam[a] != lam[b]:
                continue
            new_share[i] = prev_share(w.max_pred(a), w.min_pred(b))
        for v in alive_i:
            if lam[v] == SOURCE:
                continue
            lo, hi = w.min_pred(v), w.max_pred(v)
            new_single[v] = single[lo] and single[hi] and prev_share(lo, hi)

        still = []
        for i in alive_e:
            if new_share[i]:
                still.append(i)
            else:
                elcs[i] = ell - 1
        alive_e = still
        still = []
        for v in alive_i:
            if new_single[v]:
                still.append(v)
            else:
                ilcs[v] = ell - 1
        alive_i = still
        share, single = new_share, new_single

    for i in alive_e:
        elcs[i] = k
    for v in alive_i:
        ilcs[v] = k
    return LcsData.from_arrays(k, elcs, ilcs)


def _chain_lcs(w: WheelerGraph, x: int, y: int, step_x, step_y, cap: int) -> int:
    """Common suffix length of the strings spelled backwards from ``x`` and
    ``y`` by repeatedly taking ``step_x``/``step_y`` in-neighbours. The pair
    state space is finite, so a repeated pair means the suffix is infinite."""
    seen = set()
    length = 0
    while length < cap:
        if w.lam[x] == SOURCE or w.lam[y] == SOURCE or w.lam[x] != w.lam[y]:
            return length
        if (x, y) in seen:
            return cap
        seen.add((x, y))
        length += 1
        x, y = step_x(w.preds[x]), step_y(w.preds[y])
    return cap


def lcs_from_chains(w: WheelerGraph, cap: int) -> LcsData:
    """Same arrays as :func:`compute_levels`, computed by walking the
    infimum/supremum predecessor chains pairwise. Cost is O(n^3) in the
    worst case, independent of ``cap``."""
    cap = check_k(cap)
    n = w.n
    elcs: List[int] = [0] * n
    ilcs: List[int] = [0] * n
    for i in range(1, n):
        elcs[i] = _chain_lcs(w, i - 1, i, max, min, cap)
    for v in range(n):
        ilcs[v] = _chain_lcs(w, v, v, min, max, cap)
    return LcsData.from_arrays(cap, elcs, ilcs)
