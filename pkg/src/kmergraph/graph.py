"""Labeled graphs, the WGF text format, and Wheeler-order validation.

Vertices are 0-based integers internally; the WGF format and the CLI use
1-based indices. Labels are integer codes ``0..sigma-1`` whose numeric
order is the alphabet order; ``alphabet[c]`` is the display character of
code ``c``.
"""
from __future__ import annotations

import warnings
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ParseError, WheelerViolation

SOURCE = -1  # incoming label of a vertex without in-edges

_PRINTABLE = "".join(chr(c) for c in range(33, 127))


def default_alphabet(sigma: int) -> str:
    """Display characters for codes ``0..sigma-1`` when none were given."""
    base = "abcdefghijklmnopqrstuvwxyz"
    if sigma <= len(base):
        return base[:sigma]
    if sigma <= len(_PRINTABLE):
        return _PRINTABLE[:sigma]
    raise ValueError(f"no default display alphabet for sigma={sigma}")


@dataclass(frozen=True)
class LabeledGraph:
    """Directed graph with one integer label per edge.

    ``edges`` is a sorted tuple of distinct ``(u, v, label)`` triples.
    Use :meth:`from_edges` to build one from unsorted, possibly duplicated
    input.
    """

    n: int
    edges: tuple
    sigma: int
    alphabet: str = ""

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if not self.alphabet:
            object.__setattr__(self, "alphabet", default_alphabet(self.sigma))
        if len(self.alphabet) < self.sigma:
            raise ValueError("alphabet shorter than sigma")
        prev = None
        for e in self.edges:
            u, v, c = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if not 0 <= c < self.sigma:
                raise ValueError(f"edge {e} has a label outside 0..{self.sigma - 1}")
            if prev is not None and e <= prev:
                raise ValueError("edges must be strictly sorted; use LabeledGraph.from_edges")
            prev = e

    @classmethod
    def from_edges(cls, n, edges, sigma=None, alphabet="", warn=True):
        """Build a graph, sorting edges and dropping duplicate triples."""
        raw = [tuple(int(x) for x in e) for e in edges]
        uniq = sorted(set(raw))
        if warn and len(uniq) < len(raw):
            warnings.warn(f"dropped {len(raw) - len(uniq)} duplicate edge(s)", stacklevel=2)
        if sigma is None:
            sigma = max((c for _, _, c in uniq), default=-1) + 1
            if alphabet:
                sigma = max(sigma, len(alphabet))
        return cls(n, tuple(uniq), sigma, alphabet)

    @property
    def m(self):
        return len(self.edges)

    def decode(self, kmer: Sequence[int]) -> str:
        """Render a tuple of label codes as a display string."""
        return "".join(self.alphabet[c] for c in kmer)

    def encode(self, text: str) -> tuple:
        try:
            return tuple(self.alphabet.index(ch) for ch in text)
        except ValueError:
            raise ValueError(f"{text!r} uses a character outside the alphabet {self.alphabet!r}") from None

    def indegrees(self):
        deg = [0] * self.n
        for _, v, _ in self.edges:
            deg[v] += 1
        return deg

    def out_edges(self):
        out = [[] for _ in range(self.n)]
        for u, v, c in self.edges:
            out[u].append((c, v))
        for lst in out:
            lst.sort()
        return out

    def in_edges(self):
        inc = [[] for _ in range(self.n)]
        for u, v, c in self.edges:
            inc[v].append((u, c))
        for lst in inc:
            lst.sort()
        return inc

    def relabel_vertices(self, order: Sequence[int]) -> "LabeledGraph":
        """Return the graph with old vertex ``order[i]`` renamed to ``i``."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("order must be a permutation of the vertices")
        new = {old: i for i, old in enumerate(order)}
        return LabeledGraph.from_edges(
            self.n, [(new[u], new[v], c) for u, v, c in self.edges], self.sigma, self.alphabet
        )


# --------------------------------------------------------------------------
# WGF text format
# --------------------------------------------------------------------------


def parse_graph(text: str) -> LabeledGraph:
    """Parse a WGF document.

    Format: ``WGF 1`` header, a ``n m`` line, then ``m`` lines ``u v c`` with
    1-based vertex indices and a single printable ASCII label character.
    Lines starting with ``#`` are comments. Label codes are assigned by
    sorting the distinct characters by code point.
    """
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        records.append((lineno, line))
    if not records:
        raise ParseError("empty input, expected 'WGF 1' header", 1)

    lineno, header = records[0]
    if header.split() != ["WGF", "1"]:
        raise ParseError(f"malformed header {header!r}, expected 'WGF 1'", lineno)
    if len(records) < 2:
        raise ParseError("missing 'n m' line", lineno + 1)
    lineno, sizes = records[1]
    parts = sizes.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"malformed size line {sizes!r}, expected 'n m'", lineno)
    n, m = int(parts[0]), int(parts[1])

    body = records[2:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else lineno + 1)
        raise ParseError(f"expected {m} edge lines, found {len(body)}", where)

    triples = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"malformed edge line {line!r}, expected 'u v c'", lineno)
        u, v, c = parts
        if not (u.isdigit() and v.isdigit()):
            raise ParseError(f"non-integer vertex index in {line!r}", lineno)
        u, v = int(u), int(v)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError("vertex index out of range", lineno)
        if len(c) != 1 or c not in _PRINTABLE:
            raise ParseError(f"label {c!r} is not one printable ASCII character", lineno)
        triples.append((u - 1, v - 1, c))

    alphabet = "".join(sorted({c for _, _, c in triples}))
    code = {ch: i for i, ch in enumerate(alphabet)}
    return LabeledGraph.from_edges(
        n, [(u, v, code[c]) for u, v, c in triples], len(alphabet), alphabet
    )


def read_graph(path) -> LabeledGraph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())


def format_graph(g: LabeledGraph, comment: Optional[str] = None) -> str:
    """Serialize to WGF; the inverse of :func:`parse_graph` up to label codes."""
    for ch in g.alphabet[: g.sigma]:
        if ch not in _PRINTABLE:
            raise ValueError(f"label {ch!r} cannot be written to WGF")
    lines = ["WGF 1"]
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u + 1} {v + 1} {g.alphabet[c]}" for u, v, c in g.edges)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# determinism and Wheeler validation
# --------------------------------------------------------------------------


def check_deterministic(g: LabeledGraph):
    """Return ``(True, None)`` or ``(False, (e1, e2))`` for the first vertex
    with two out-edges sharing a label."""
    # edges are sorted by (u, v, c); group by (u, c)
    seen = {}
    for e in g.edges:
        key = (e[0], e[2])
        if key in seen:
            return False, (seen[key], e)
        seen[key] = e
    return True, None


@dataclass(frozen=True)
class WheelerGraph:
    """A deterministic labeled graph whose vertex numbering is a Wheeler order.

    Build it with :func:`validate_wheeler`; the constructor trusts its input.
    """

    base: LabeledGraph
    lam: tuple  # incoming label per vertex, SOURCE for sources
    preds: tuple  # sorted in-neighbours per vertex
    succs: tuple  # (label, target) per vertex, sorted by label
    label_edges: tuple = field(repr=False)  # per label: (sources, targets), both sorted

    @property
    def n(self):
        return self.base.n

    @property
    def m(self):
        return self.base.m

    @property
    def sigma(self):
        return self.base.sigma

    @property
    def size(self):
        """|W| = vertices + edges."""
        return self.base.n + self.base.m

    def is_source(self, v):
        return self.lam[v] == SOURCE

    def is_sink(self, v):
        return not self.succs[v]

    @property
    def n_sources(self):
        return sum(1 for x in self.lam if x == SOURCE)

    def min_pred(self, v):
        p = self.preds[v]
        return p[0] if p else None

    def max_pred(self, v):
        p = self.preds[v]
        return p[-1] if p else None

    def forward(self, lo, hi, c):
        """Forward search step: the vertex interval reached from ``[lo, hi]``
        by one ``c``-labeled edge, or ``None``. Also returns the index range of
        the ``c``-edges used, for callers that need the first source."""
        if not 0 <= c < self.sigma:
            return None
        sources, targets = self.label_edges[c]
        a = bisect_left(sources, lo)
        b = bisect_right(sources, hi)
        if a >= b:
            return None
        return targets[a], targets[b - 1], sources[a]

    def in_rank(self, v, u):
        """Position of ``u`` in the sorted in-neighbour list of ``v``."""
        p = self.preds[v]
        i = bisect_left(p, u)
        if i == len(p) or p[i] != u:
            raise KeyError(f"{u} is not an in-neighbour of {v}")
        return i


def validate_wheeler(g: LabeledGraph) -> WheelerGraph:
    """Check that ``g`` is deterministic and its numbering is a Wheeler order.

    Raises :class:`WheelerViolation` naming the first failing rule with a
    witness. Runs in O(m log m).
    """
    ok, pair = check_deterministic(g)
    if not ok:
        raise WheelerViolation("nondeterministic", pair)

    in_label = [SOURCE] * g.n
    in_witness = [None] * g.n
    for e in g.edges:
        u, v, c = e
        if in_label[v] == SOURCE:
            in_label[v], in_witness[v] = c, e
        elif in_label[v] != c:
            raise WheelerViolation("input-inconsistent", (in_witness[v], e))

    seen_target = None
    for v in range(g.n):
        if in_label[v] != SOURCE:
            seen_target = v
        elif seen_target is not None:
            raise WheelerViolation(
                "sources-first",
                (in_witness[seen_target],),
                f"source {v} follows vertex {seen_target} which has in-edges",
            )

    # W1: among non-sources the incoming label never decreases
    prev = None
    for v in range(g.n):
        if in_label[v] == SOURCE:
            continue
        if prev is not None and in_label[prev] > in_label[v]:
            raise WheelerViolation("W1", (in_witness[prev], in_witness[v]))
        prev = v

    by_label = [[] for _ in range(g.sigma)]
    for u, v, c in g.edges:
        by_label[c].append((u, v))
    label_edges = []
    for c, lst in enumerate(by_label):
        lst.sort()
        for (u1, v1), (u2, v2) in zip(lst, lst[1:]):
            if v2 < v1:  # u1 < u2 by determinism
                raise WheelerViolation("W2", ((u1, v1, c), (u2, v2, c)))
        label_edges.append((tuple(u for u, _ in lst), tuple(v for _, v in lst)))

    preds = [[] for _ in range(g.n)]
    succs = [[] for _ in range(g.n)]
    for u, v, c in g.edges:
        preds[v].append(u)
        succs[u].append((c, v))
    return WheelerGraph(
        base=g,
        lam=tuple(in_label),
        preds=tuple(tuple(sorted(p)) for p in preds),
        succs=tuple(tuple(sorted(s)) for s in succs),
        label_edges=tuple(label_edges),
    )


def is_wheeler(g: LabeledGraph) -> bool:
    try:
        validate_wheeler(g)
    except WheelerViolation:
        return False
    return True

