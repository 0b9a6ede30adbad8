"""Brute-force ground truth.

Everything here enumerates strings explicitly and is only meant for small
instances: the k-mer sets are guarded by a size cap and raise
:class:`~kmergraph.errors.OracleTooLarge` rather than truncate.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

from .errors import OracleTooLarge, ParseError
from .graph import SOURCE, LabeledGraph, WheelerGraph
from .validation import check_graph, check_k, resolve_oracle_cap

Kmer = Tuple[int, ...]


def colex_key(s: Sequence[int]) -> tuple:
    """Sort key for colexicographic order (compare right to left)."""
    return tuple(reversed(s))


def colex_sorted(strings) -> List[Kmer]:
    return sorted((tuple(s) for s in strings), key=colex_key)


@dataclass(frozen=True)
class KmerSet:
    k: int
    members: tuple  # colex-sorted label tuples

    def __len__(self):
        return len(self.members)

    def __contains__(self, kmer):
        return tuple(kmer) in set(self.members)

    def decode(self, g: LabeledGraph) -> List[str]:
        return [g.decode(m) for m in self.members]


@dataclass(frozen=True)
class ExplicitDbg:
    """Node-centric de Bruijn graph: nodes are k-mers in colex order and
    ``(i, j, c)`` is an edge when node ``i`` shifted left by one and extended
    by ``c`` is node ``j``."""

    k: int
    nodes: tuple
    edges: tuple  # sorted (i, j, label)

    @property
    def size(self):
        return len(self.nodes) + len(self.edges)

    def canonical(self):
        """Node list and edge set keyed by k-mer, independent of indexing."""
        return (
            tuple(self.nodes),
            frozenset((self.nodes[i], self.nodes[j], c) for i, j, c in self.edges),
        )


def _walk_sets(g: LabeledGraph, k: int, cap: int):
    # S_v^l for l = 0..k via the union recurrence. A string s_1..s_l is
    # stored as the integer sum s_i * base**(i-1): the last label is the
    # most significant digit, so integer order is colex order.
    base = max(g.sigma, 1)
    cur = [{0} for _ in range(g.n)]
    for ell in range(k):
        weight = base**ell
        nxt = [set() for _ in range(g.n)]
        for u, v, c in g.edges:
            src = cur[u]
            if src:
                shift = c * weight
                nxt[v].update(x + shift for x in src)
        total = sum(len(s) for s in nxt)
        if total > cap:
            raise OracleTooLarge(f"oracle too large: {total} k-mers exceed the cap {cap}")
        cur = nxt
    return cur


def _decode(x: int, k: int, base: int) -> Kmer:
    out = []
    for _ in range(k):
        x, c = divmod(x, base)
        out.append(c)
    return tuple(out)


def enumerate_kmers(g, k, cap=None):
    """All k-mers of ``g`` plus the per-vertex sets of k-mers reaching each
    vertex. Works on any labeled graph. Returns ``(KmerSet, per_vertex)``
    where ``per_vertex[v]`` is a colex-sorted tuple."""
    g = check_graph(g)
    k = check_k(k)
    cap = resolve_oracle_cap(cap)
    sets = _walk_sets(g, k, cap)
    base = max(g.sigma, 1)
    union = {0} if k == 0 else set().union(*sets)
    per_vertex = [tuple(_decode(x, k, base) for x in sorted(s)) for s in sets]
    return KmerSet(k, tuple(_decode(x, k, base) for x in sorted(union))), per_vertex


def kmer_counts(g, k, cap=None):
    """``(total, per_vertex_sizes)`` from the same enumeration as
    :func:`enumerate_kmers`, without materialising label tuples."""
    g = check_graph(g)
    k = check_k(k)
    sets = _walk_sets(g, k, resolve_oracle_cap(cap))
    total = 1 if k == 0 else len(set().union(*sets))
    return total, tuple(len(s) for s in sets)


def count_kmers_brute(g, k, cap=None) -> int:
    return kmer_counts(g, k, cap)[0]


def arrival_sets(per_vertex) -> dict:
    """Map each k-mer to the sorted tuple of vertices it reaches."""
    out = {}
    for v, members in enumerate(per_vertex):
        for a in members:
            out.setdefault(a, []).append(v)
    return {a: tuple(vs) for a, vs in out.items()}


def build_dbg_brute(g, k, cap=None) -> ExplicitDbg:
    k = check_k(k, minimum=1)
    kmers, _ = enumerate_kmers(g, k, cap)
    nodes = kmers.members
    index = {a: i for i, a in enumerate(nodes)}
    g = check_graph(g)
    edges = []
    for i, a in enumerate(nodes):
        for c in range(g.sigma):
            j = index.get(a[1:] + (c,))
            if j is not None:
                edges.append((i, j, c))
    return ExplicitDbg(k, nodes, tuple(sorted(edges)))


class InfSup(NamedTuple):
    """Length-``cap`` suffixes of the infimum and supremum strings of a
    vertex. A string shorter than ``cap`` is the complete finite string."""

    inf: Kmer
    sup: Kmer


def inf_sup_capped(w: WheelerGraph, v: int, cap: int) -> InfSup:
    """Follow smallest (largest) in-neighbours backwards from ``v`` for up to
    ``cap`` steps, collecting incoming labels."""
    cap = check_k(cap, "cap")

    def chain(pick):
        out = []
        x = v
        while len(out) < cap and w.lam[x] != SOURCE:
            out.append(w.lam[x])
            x = pick(w.preds[x])
        return tuple(reversed(out))

    return InfSup(chain(min), chain(max))


def common_suffix(a: Sequence[int], b: Sequence[int]) -> int:
    n = 0
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            break
        n += 1
    return n


# --------------------------------------------------------------------------
# DNF formulas
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of conjunctive clauses over variables ``1..nvars``.
    Literals are signed integers: ``3`` is x3, ``-3`` is not x3."""

    nvars: int
    clauses: tuple

    def __post_init__(self):
        if self.nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for j, clause in enumerate(clauses):
            seen = {}
            for lit in clause:
                var = abs(lit)
                if lit == 0 or var > self.nvars:
                    raise ValueError(f"clause {j + 1}: literal {lit} outside 1..{self.nvars}")
                if seen.get(var, lit) != lit:
                    raise ValueError(f"clause {j + 1} contains both x{var} and its negation")
                seen[var] = lit

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return any(all(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dnf(text: str) -> DnfFormula:
    """``DNF 1`` header, ``nvars nclauses``, then one clause per line."""
    records = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not records or records[0][1].split() != ["DNF", "1"]:
        raise ParseError("malformed header, expected 'DNF 1'", records[0][0] if records else 1)
    if len(records) < 2:
        raise ParseError("missing 'nvars nclauses' line", records[0][0] + 1)
    lineno, sizes = records[1]
    try:
        nvars, nclauses = (int(x) for x in sizes.split())
    except ValueError:
        raise ParseError(f"malformed size line {sizes!r}", lineno) from None
    body = records[2:]
    if len(body) != nclauses:
        raise ParseError(f"expected {nclauses} clause lines, found {len(body)}", lineno)
    clauses = []
    for lineno, line in body:
        try:
            clauses.append(tuple(int(x) for x in line.split()))
        except ValueError:
            raise ParseError(f"non-integer literal in {line!r}", lineno) from None
    try:
        return DnfFormula(nvars, tuple(clauses))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_dnf(f: DnfFormula) -> str:
    lines = ["DNF 1", f"{f.nvars} {len(f.clauses)}"]
    lines.extend(" ".join(str(l) for l in c) for c in f.clauses)
    return "\n".join(lines) + "\n"


def dnf_count_sat_brute(f: DnfFormula, max_vars: int = 24) -> int:
    """Model count by enumerating all ``2**nvars`` assignments."""
    if f.nvars > max_vars:
        raise OracleTooLarge(f"{f.nvars} variables exceed the enumeration limit {max_vars}")
    return sum(
        1 for bits in itertools.product((False, True), repeat=f.nvars) if f.satisfied_by(bits)
    )


class ExtensionProfile(NamedTuple):
    """Brute-force view of the (k-1)-mers reaching one vertex: its external
    ones (``None`` when undefined), its inner ones in colex order, and the
    number of k-mers reaching the vertex with each as a suffix."""

    mu: object
    phi: object
    inner: tuple
    F: int
    L: int
    K: tuple


def extension_profiles(w: WheelerGraph, k: int, cap=None) -> List[ExtensionProfile]:
    k = check_k(k, minimum=2)
    _, short = enumerate_kmers(w, k - 1, cap)
    _, full = enumerate_kmers(w, k, cap)
    out = []
    for v in range(w.n):
        bounds = inf_sup_capped(w, v, k - 1)
        mu = bounds.inf if len(bounds.inf) == k - 1 else None
        phi = bounds.sup if len(bounds.sup) == k - 1 else None

        def ext(alpha):
            return sum(1 for a in full[v] if a[1:] == alpha)

        inner = tuple(a for a in short[v] if a != mu and a != phi)
        out.append(
            ExtensionProfile(
                mu,
                phi,
                inner,
                ext(mu) if mu is not None else 0,
                ext(phi) if phi is not None else 0,
                tuple(ext(a) for a in inner),
            )
        )
    return out
