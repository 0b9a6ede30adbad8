import pytest

from kmergraph import LabeledGraph, ParseError, WheelerViolation, format_graph, parse_graph, validate_wheeler
from kmergraph.graph import SOURCE, check_deterministic


def test_parse_single_edge():
    g = parse_graph("WGF 1\n2 1\n1 2 a")
    assert g.n == 2
    assert g.edges == ((0, 1, 0),)
    assert g.alphabet == "a"


def test_parse_self_loop(g2):
    assert parse_graph("WGF 1\n1 1\n1 1 a") == g2


def test_parse_out_of_range_line_number():
    with pytest.raises(ParseError) as err:
        parse_graph("WGF 1\n2 1\n3 1 a")
    assert err.value.line == 3
    assert "vertex index out of range, line 3" in str(err.value)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("WGF 2\n1 0", 1),
        ("WGF 1\nx 0", 2),
        ("WGF 1\n2 2\n1 2 a", 4),
        ("WGF 1\n2 1\n1 2 ab", 3),
        ("WGF 1\n2 1\n1 2 \x07", 3),
        ("WGF 1\n2 1\n1 q a", 3),
    ],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.line == line


def test_parse_skips_comments_and_dedups():
    with pytest.warns(UserWarning):
        g = parse_graph("WGF 1\n# hi\n2 2\n1 2 a\n1 2 a\n")
    assert g.m == 1


def test_labels_sorted_by_code_point():
    g = parse_graph("WGF 1\n3 2\n1 2 b\n1 3 A")
    assert g.alphabet == "Ab"
    assert set(g.edges) == {(0, 1, 1), (0, 2, 0)}


def test_format_roundtrip(g3):
    assert parse_graph(format_graph(g3, "two-cycle")) == g3


def test_deterministic_examples(g2):
    assert check_deterministic(g2) == (True, None)
    ok, pair = check_deterministic(LabeledGraph.from_edges(3, [(0, 1, 0), (0, 2, 0)], 1, "a"))
    assert not ok
    assert pair == ((0, 1, 0), (0, 2, 0))
    assert check_deterministic(LabeledGraph.from_edges(1, [], 0)) == (True, None)


def test_validate_two_cycle(w3):
    assert w3.lam == (0, 1)  # 'a' into v1, 'b' into v2
    assert w3.preds == ((1,), (0,))


def test_validate_two_cycle_swapped(g3):
    with pytest.raises(WheelerViolation) as err:
        validate_wheeler(g3.relabel_vertices([1, 0]))
    assert err.value.rule == "W1"


def test_validate_single_edge(g1):
    w = validate_wheeler(g1)
    assert w.lam[0] == SOURCE
    assert w.lam[1] == 0
    assert w.n_sources == 1


def test_edgeless_graph_is_valid():
    w = validate_wheeler(LabeledGraph.from_edges(3, [], 0))
    assert w.n_sources == 3


@pytest.mark.parametrize(
    "n, edges, sigma, rule",
    [
        (3, [(0, 1, 0), (0, 2, 0)], 1, "nondeterministic"),
        (3, [(0, 2, 0), (1, 2, 1)], 2, "input-inconsistent"),
        (2, [(1, 0, 0)], 1, "sources-first"),
        (3, [(0, 1, 1), (0, 2, 0)], 2, "W1"),
        (4, [(0, 3, 0), (1, 2, 0)], 1, "W2"),
    ],
)
def test_violation_rules(n, edges, sigma, rule):
    with pytest.raises(WheelerViolation) as err:
        validate_wheeler(LabeledGraph.from_edges(n, edges, sigma))
    assert err.value.rule == rule
    assert err.value.to_dict()["rule"] == rule


def test_forward_step(w3):
    assert w3.forward(0, 1, 0) == (0, 0, 1)
    assert w3.forward(0, 0, 0) is None
    assert w3.forward(0, 1, 5) is None
