"""Random and fixed test instances.

Every generator that claims to produce deterministic Wheeler graphs runs
its output through :func:`validate_wheeler` before returning it.
"""
from __future__ import annotations

import random
from typing import List, Optional

from .graph import LabeledGraph, WheelerGraph, validate_wheeler
from .errors import WheelerViolation
from .oracle import DnfFormula, colex_key


def single_edge() -> LabeledGraph:
    """A source with one ``a`` edge: ``1 -a-> 2``."""
    return LabeledGraph.from_edges(2, [(0, 1, 0)], 1, "a")


def self_loop() -> LabeledGraph:
    """One vertex with an ``a`` self-loop."""
    return LabeledGraph.from_edges(1, [(0, 0, 0)], 1, "a")


def two_cycle() -> LabeledGraph:
    """``1 -b-> 2 -a-> 1``."""
    return LabeledGraph.from_edges(2, [(0, 1, 1), (1, 0, 0)], 2, "ab")


def example_formula() -> DnfFormula:
    """(x1 and x3) or (not x1 and x2) or (not x1 and not x3)."""
    return DnfFormula(3, ((1, 3), (-1, 2), (-1, -3)))


def _as_rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def de_bruijn_graph(text, t: int, sigma: int, cyclic=False, overlap_edges=True) -> LabeledGraph:
    """Order-``t`` de Bruijn graph of a string of label codes.

    Linear strings are padded on the left with ``t`` copies of a sentinel
    that sorts before every label, so the all-sentinel node is the only
    source. Vertices are numbered in colex order of their t-mers, which is a
    Wheeler order. With ``overlap_edges`` every pair of nodes overlapping in
    ``t-1`` symbols is connected; otherwise only consecutive windows are.
    """
    if t < 1:
        raise ValueError("order must be at least 1")
    shifted = [c + 1 for c in text]  # 0 is the sentinel
    if cyclic:
        if not shifted:
            raise ValueError("cyclic de Bruijn graph of an empty string")
        # enough copies that every rotation's window is complete
        reps = -(-t // len(shifted)) + 1
        ext = shifted * (2 * reps)
        windows = [tuple(ext[i : i + t]) for i in range(len(shifted) * reps)]
        path = [(windows[i], windows[i + 1]) for i in range(len(windows) - 1)]
    else:
        ext = [0] * t + shifted
        windows = [tuple(ext[i : i + t]) for i in range(len(ext) - t + 1)]
        path = [(windows[i], windows[i + 1]) for i in range(len(windows) - 1)]
    nodes = sorted(set(windows), key=colex_key)
    index = {a: i for i, a in enumerate(nodes)}
    edges = set()
    if overlap_edges:
        by_prefix = {}
        for b in nodes:
            by_prefix.setdefault(b[:-1], []).append(b)
        for a in nodes:
            for b in by_prefix.get(a[1:], ()):
                if b[-1] != 0:
                    edges.add((index[a], index[b], b[-1] - 1))
    else:
        for a, b in path:
            edges.add((index[a], index[b], b[-1] - 1))
    return LabeledGraph.from_edges(len(nodes), edges, sigma, warn=False)


def random_dbg_dwg(seed=None, sigma=2, t=2, length=8, cyclic=False, overlap_edges=True) -> WheelerGraph:
    rng = _as_rng(seed)
    text = [rng.randrange(sigma) for _ in range(length)]
    return validate_wheeler(de_bruijn_graph(text, t, sigma, cyclic, overlap_edges))


def random_dwg(seed=None, n=6, sigma=2, n_sources=None, density=0.5) -> WheelerGraph:
    """Sample a deterministic Wheeler graph directly.

    Sources take a prefix of the order; the rest get nondecreasing incoming
    labels. For each label the edges form a monotone map from a random set
    of origins onto that label's targets, which satisfies both Wheeler
    conditions and determinism by construction.
    """
    rng = _as_rng(seed)
    if n < 1:
        raise ValueError("need at least one vertex")
    if n_sources is None:
        n_sources = rng.choice([0, 0, 1, 1, 1, 2])
    n_sources = min(n_sources, n)
    labels = sorted(rng.randrange(sigma) for _ in range(n - n_sources))
    lam = [None] * n_sources + labels
    edges = []
    for c in range(sigma):
        targets = [v for v in range(n) if lam[v] == c]
        if not targets:
            continue
        extra = sum(1 for _ in range(n - len(targets)) if rng.random() < density)
        size = len(targets) + extra
        origins = sorted(rng.sample(range(n), size))
        # split origins into len(targets) nonempty consecutive blocks
        cuts = sorted(rng.sample(range(1, size), len(targets) - 1)) if len(targets) > 1 else []
        bounds = [0, *cuts, size]
        for i, v in enumerate(targets):
            for u in origins[bounds[i] : bounds[i + 1]]:
                edges.append((u, v, c))
    return validate_wheeler(LabeledGraph.from_edges(n, edges, sigma, warn=False))


def rejection_sampled_dwg(seed=None, n=4, sigma=2, p_edge=0.4, max_tries=10_000) -> WheelerGraph:
    """Random DAG (edges go forward in the numbering) kept only if
    :func:`validate_wheeler` accepts the numbering as given."""
    rng = _as_rng(seed)
    for _ in range(max_tries):
        edges = [
            (u, v, rng.randrange(sigma))
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p_edge
        ]
        g = LabeledGraph.from_edges(n, edges, sigma, warn=False)
        try:
            return validate_wheeler(g)
        except WheelerViolation:
            continue
    raise RuntimeError(f"no Wheeler DAG found in {max_tries} tries")


def random_labeled_graph(seed=None, n=5, sigma=2, m=None) -> LabeledGraph:
    """Arbitrary labeled digraph, possibly nondeterministic and cyclic."""
    rng = _as_rng(seed)
    if m is None:
        m = rng.randint(n, 2 * n + 2)
    edges = {(rng.randrange(n), rng.randrange(n), rng.randrange(sigma)) for _ in range(m)}
    return LabeledGraph.from_edges(n, edges, sigma, warn=False)


def random_dnf(seed=None, nvars=4, nclauses=3, p_literal=0.6) -> DnfFormula:
    rng = _as_rng(seed)
    clauses = []
    for _ in range(nclauses):
        clause = [
            v if rng.random() < 0.5 else -v for v in range(1, nvars + 1) if rng.random() < p_literal
        ]
        clauses.append(tuple(clause))
    return DnfFormula(nvars, tuple(clauses))


def dwg_suite(seed=0, count=200, max_n=12, max_sigma=4) -> List[WheelerGraph]:
    """A reproducible mix of generated DWGs with at most ``max_n`` vertices:
    padded and cyclic de Bruijn graphs of random strings, directly sampled
    DWGs, and rejection-sampled DAGs."""
    rng = random.Random(seed)
    out: List[WheelerGraph] = []
    while len(out) < count:
        kind = len(out) % 4
        sigma = rng.randint(1, max_sigma)
        w: Optional[WheelerGraph]
        if kind == 0:
            t = rng.randint(1, 3)
            w = random_dbg_dwg(rng, sigma, t, rng.randint(1, 10), False, rng.random() < 0.5)
        elif kind == 1:
            t = rng.randint(1, 3)
            w = random_dbg_dwg(rng, sigma, t, rng.randint(1, 8), True, rng.random() < 0.5)
        elif kind == 2:
            w = random_dwg(rng, rng.randint(1, max_n), sigma, density=rng.random())
        else:
            w = rejection_sampled_dwg(rng, rng.randint(2, 6), sigma)
        if w.n <= max_n:
            out.append(w)
    return out
