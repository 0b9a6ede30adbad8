"""Property tests over generated deterministic Wheeler graphs."""
import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from kmergraph import (
    DbgData,
    LabeledGraph,
    WheelerViolation,
    build_dbg_brute,
    build_explicit_dbg,
    count_kmers_brute,
    count_kmers_doubling,
    count_kmers_dp,
    count_kmers_layered,
    validate_wheeler,
)
from kmergraph.doubling import DoublingState, black_intervals
from kmergraph.generators import (
    random_dbg_dwg,
    random_dnf,
    random_dwg,
    random_labeled_graph,
    rejection_sampled_dwg,
)
from kmergraph.lcs import compute_levels, lcs_from_chains
from kmergraph.oracle import colex_key, dnf_count_sat_brute, enumerate_kmers, inf_sup_capped
from kmergraph.wheelerize import dnf_to_graph, sat_count_from_graph

settings.register_profile(
    "kmergraph", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("kmergraph")


@st.composite
def dwgs(draw, max_n=10):
    seed = draw(st.integers(0, 2**32 - 1))
    kind = draw(st.sampled_from(["dbg", "cyclic", "direct", "rejection"]))
    sigma = draw(st.integers(1, 3))
    rng = random.Random(seed)
    if kind in ("dbg", "cyclic"):
        w = random_dbg_dwg(rng, sigma, draw(st.integers(1, 3)), draw(st.integers(1, 7)), kind == "cyclic", draw(st.booleans()))
    elif kind == "direct":
        w = random_dwg(rng, draw(st.integers(1, max_n)), sigma, density=draw(st.floats(0, 1)))
    else:
        w = rejection_sampled_dwg(rng, draw(st.integers(2, 5)), sigma)
    return w


def colex_le(a, b):
    return colex_key(a) <= colex_key(b)


# -- graph core -------------------------------------------------------------


@given(dwgs(), st.randoms(use_true_random=False))
def test_permuted_numbering_fails_or_is_isomorphic(w, rnd):
    order = list(range(w.n))
    rnd.shuffle(order)
    try:
        other = validate_wheeler(w.base.relabel_vertices(order))
    except WheelerViolation:
        return
    # relabel_vertices renames old vertex order[i] to i
    a = count_kmers_dp(w, 3).per_vertex.c
    b = count_kmers_dp(other, 3).per_vertex.c
    assert all(a[order[i]] == b[i] for i in range(w.n))
    assert count_kmers_dp(other, 3).total == count_kmers_dp(w, 3).total


@given(dwgs())
def test_input_consistency(w):
    for v in range(w.n):
        labels = {c for u, x, c in w.base.edges if x == v}
        assert len(labels) <= 1
        assert labels == ({w.lam[v]} if w.preds[v] else set())


@given(dwgs())
def test_equal_label_edges_are_monotone(w):
    edges = w.base.edges
    for u, v, c in edges:
        for u2, v2, c2 in edges:
            if c != c2:
                continue
            if v < v2:
                assert u < u2
            if u < u2:
                assert v <= v2


# -- oracle facts -----------------------------------------------------------


@given(dwgs(), st.integers(1, 5))
def test_ordered_kmer_sets(w, k):
    _, sets = enumerate_kmers(w.base, k)
    for u in range(w.n):
        for v in range(u + 1, w.n):
            if sets[u] and sets[v]:
                assert colex_le(sets[u][-1], sets[v][0])
                common = set(sets[u]) & set(sets[v])
                assert common in (set(), {sets[u][-1]})
                if common:
                    assert sets[u][-1] == sets[v][0]


@given(dwgs(), st.integers(1, 5))
def test_extremes_are_inf_sup_suffixes(w, k):
    _, sets = enumerate_kmers(w.base, k)
    for v in range(w.n):
        inf, sup = inf_sup_capped(w, v, k)
        if len(sup) == k:
            assert sets[v][-1] == sup
        if len(inf) == k:
            assert sets[v][0] == inf
        for u in range(v):
            if sets[u] and sets[v] and sets[u][-1] == sets[v][0]:
                assert len(inf_sup_capped(w, u, k).sup) == k
                assert len(inf) == k


# -- lcs ----------------------------------------------------------------------


@given(dwgs(), st.integers(1, 5))
def test_share_matches_sets(w, cap):
    lcs = compute_levels(w, cap)
    for ell in range(1, cap + 1):
        _, sets = enumerate_kmers(w.base, ell)
        for u in range(w.n):
            for v in range(u + 1, w.n):
                expect = bool(sets[u]) and bool(sets[v]) and sets[u][-1] == sets[v][0]
                assert lcs.share(ell, u, v) == expect


@given(dwgs(), st.integers(1, 6))
def test_share_monotone(w, cap):
    lcs = compute_levels(w, cap)
    for u in range(w.n):
        for v in range(u, w.n):
            prev = True
            for ell in range(cap + 1):
                cur = lcs.share(ell, u, v)
                assert prev or not cur
                prev = cur
        for ell in range(1, cap + 1):
            run = [lcs.share(ell, u, v) for v in range(u + 1, w.n)]
            assert run == sorted(run, reverse=True)


@given(dwgs(), st.integers(1, 6))
def test_adjacent_extremes_ordered(w, cap):
    for v in range(1, w.n):
        assert colex_le(inf_sup_capped(w, v - 1, cap).sup, inf_sup_capped(w, v, cap).inf)


@given(dwgs(), st.integers(1, 8))
def test_levels_equal_chains(w, cap):
    assert compute_levels(w, cap) == lcs_from_chains(w, cap)


# -- counters -----------------------------------------------------------------


@given(dwgs(), st.integers(0, 8))
def test_dp_matches_oracle(w, k):
    kmers, sets = enumerate_kmers(w.base, k)
    res = count_kmers_dp(w, k)
    assert res.total == len(kmers)
    assert res.per_vertex.c == tuple(len(s) for s in sets)
    assert res.iterations == k


@given(dwgs(), st.integers(1, 12))
def test_doubling_matches_dp(w, k):
    dp = count_kmers_dp(w, k)
    dbl = count_kmers_doubling(w, k)
    assert (dbl.total, dbl.per_vertex.c) == (dp.total, dp.per_vertex.c)


@given(dwgs(), st.integers(1, 12))
def test_ladder_levels_are_dp_levels(w, k):
    state = DoublingState(w, k)
    for ell in state.ladder:
        assert state.level_counts(ell) == count_kmers_dp(w, ell).per_vertex.c
        lvl = state.levels[ell]
        for u in range(w.n):
            for v in range(w.n):
                if lvl.d.dinf[u][v] or lvl.d.dsup[u][v]:
                    assert lvl.reach.m[u][v]


@given(dwgs(), st.integers(0, 6))
def test_black_runs_overlap_only_at_ends(w, ell):
    lcs = compute_levels(w, max(ell, 1))
    runs = black_intervals(lcs, ell).intervals
    for (a, b), (c, d) in zip(runs, runs[1:]):
        assert a < b and c < d
        assert b <= c
    for a, b in runs:
        assert all(lcs.share(ell, i, i + 1) for i in range(a, b))


@given(st.integers(1, 6), st.integers(0, 5))
def test_edgeless_graph(n, k):
    w = validate_wheeler(LabeledGraph.from_edges(n, [], 0))
    assert count_kmers_dp(w, k).total == (1 if k == 0 else 0)


# -- transformations ----------------------------------------------------------


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 3), st.integers(1, 6))
def test_layered_matches_brute(seed, n, sigma, k):
    g = random_labeled_graph(seed, n=n, sigma=sigma)
    assert count_kmers_layered(g, k) == count_kmers_brute(g, k)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(0, 4))
def test_reduction_identity(seed, nvars, nclauses):
    f = random_dnf(seed, nvars=nvars, nclauses=nclauses)
    gi = dnf_to_graph(f)
    assert all(u < v for u, v, _ in gi.graph.edges)
    assert sat_count_from_graph(gi) == dnf_count_sat_brute(f)


# -- de Bruijn simulation -----------------------------------------------------


@given(dwgs(max_n=8), st.integers(2, 6))
def test_explicit_dbg_matches_oracle(w, k):
    data = DbgData(w, k)
    oracle = build_dbg_brute(w.base, k)
    assert build_explicit_dbg(data).canonical() == oracle.canonical()
    assert data.k_array_mass() <= oracle.size
    kmers = oracle.nodes
    assert [data.index_of(data.handle_of(a)) for a in kmers] == list(range(len(kmers)))
