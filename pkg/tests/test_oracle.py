import pytest

from kmergraph import OracleTooLarge, build_dbg_brute, count_kmers_brute, dnf_to_graph, enumerate_kmers
from kmergraph.generators import example_formula
from kmergraph.oracle import (
    DnfFormula,
    colex_sorted,
    dnf_count_sat_brute,
    format_dnf,
    inf_sup_capped,
    parse_dnf,
)
from kmergraph.graph import validate_wheeler
from kmergraph.errors import ParseError


def test_two_cycle_2mers(g3):
    kmers, per_vertex = enumerate_kmers(g3, 2)
    assert sorted(kmers.decode(g3)) == ["ab", "ba"]
    assert per_vertex == [((1, 0),), ((0, 1),)]


def test_self_loop_5mer(g2):
    assert enumerate_kmers(g2, 5)[0].decode(g2) == ["aaaaa"]


@pytest.mark.parametrize("graph", ["g1", "g2", "g3"])
def test_zero_mers(graph, request):
    assert count_kmers_brute(request.getfixturevalue(graph), 0) == 1


def test_brute_counts(g1, g3):
    assert count_kmers_brute(g1, 2) == 0
    assert count_kmers_brute(g3, 7) == 2


def test_example_gadget_has_ten_3mers():
    assert count_kmers_brute(dnf_to_graph(example_formula()).graph, 3) == 10


def test_colex_order():
    assert colex_sorted([(1, 0), (0, 1), (0, 0)]) == [(0, 0), (1, 0), (0, 1)]


def test_dbg_brute_examples(g1, g2, g3):
    d = build_dbg_brute(g2, 3)
    assert d.nodes == ((0, 0, 0),)
    assert d.edges == ((0, 0, 0),)
    d = build_dbg_brute(g3, 2)
    assert [g3.decode(a) for a in d.nodes] == ["ba", "ab"]
    assert d.edges == ((0, 1, 1), (1, 0, 0))
    # one node; the overlap rule makes "a" its own successor
    assert build_dbg_brute(g1, 1).nodes == ((0,),)


def test_inf_sup_capped(g1, g2, w3):
    assert inf_sup_capped(validate_wheeler(g1), 1, 3) == ((0,), (0,))
    assert inf_sup_capped(validate_wheeler(g2), 0, 4) == ((0,) * 4, (0,) * 4)
    assert inf_sup_capped(w3, 0, 3) == ((0, 1, 0), (0, 1, 0))


def test_oracle_cap(g3):
    with pytest.raises(OracleTooLarge):
        enumerate_kmers(g3, 4, cap=1)


def test_cap_from_environment(g3, monkeypatch):
    monkeypatch.setenv("KMERGRAPH_ORACLE_CAP", "1")
    with pytest.raises(OracleTooLarge):
        count_kmers_brute(g3, 2)


def test_dnf_counts():
    assert dnf_count_sat_brute(example_formula()) == 5
    assert dnf_count_sat_brute(DnfFormula(3, ())) == 0
    assert dnf_count_sat_brute(DnfFormula(3, ((1,),))) == 4


def test_dnf_roundtrip():
    f = example_formula()
    assert parse_dnf(format_dnf(f)) == f


@pytest.mark.parametrize(
    "text",
    ["", "CNF 1\n1 0", "DNF 1\n2 2\n1 2", "DNF 1\n2 1\n1 x", "DNF 1\n2 1\n1 -1", "DNF 1\n2 1\n3"],
)
def test_dnf_parse_errors(text):
    with pytest.raises(ParseError):
        parse_dnf(text)
