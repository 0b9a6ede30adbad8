"""k-mer preserving transformations and the DNF counting gadget.

``unfold`` copies a graph into ``k+1`` layers, ``determinize`` runs the
subset construction layer by layer from a virtual initial state, and
``count_paths_layered`` counts label strings as initial-to-last-layer paths.
``dnf_to_graph`` builds the gadget graph whose distinct n-mer count encodes
the number of satisfying assignments of a DNF formula.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple, Union

from .errors import InternalConsistencyError, StateCapExceeded
from .graph import LabeledGraph, check_deterministic
from .oracle import DnfFormula, count_kmers_brute
from .validation import check_graph, check_k

DEFAULT_STATE_CAP = 10**5


@dataclass(frozen=True)
class LayeredDag:
    """Edges run only from layer ``i`` to layer ``i+1``.

    ``widths[i]`` is the number of vertices in layer ``i``; an edge
    ``(i, u, v, c)`` joins vertex ``u`` of layer ``i`` to vertex ``v`` of
    layer ``i+1``. ``states`` optionally names the vertices of each layer
    (subsets of original vertices after determinization)."""

    widths: tuple
    edges: tuple
    sigma: int
    alphabet: str = ""
    states: tuple = ()

    @property
    def k(self):
        return len(self.widths) - 1

    def offsets(self) -> List[int]:
        out, acc = [], 0
        for wd in self.widths:
            out.append(acc)
            acc += wd
        return out

    def as_graph(self) -> LabeledGraph:
        """Flatten to one graph, numbering layer by layer."""
        off = self.offsets()
        return LabeledGraph.from_edges(
            sum(self.widths),
            [(off[i] + u, off[i + 1] + v, c) for i, u, v, c in self.edges],
            self.sigma,
            self.alphabet,
            warn=False,
        )

    def is_deterministic(self) -> bool:
        if self.widths and self.widths[0] > 1:
            return False
        seen = set()
        for i, u, _, c in self.edges:
            if (i, u, c) in seen:
                return False
            seen.add((i, u, c))
        return True


def unfold(g, k) -> LayeredDag:
    """The k-times unfolded DAG: ``k+1`` copies of the vertices and every
    edge repeated between each pair of consecutive layers."""
    g = check_graph(g)
    k = check_k(k, minimum=1)
    edges = tuple((i, u, v, c) for i in range(k) for u, v, c in g.edges)
    return LayeredDag((g.n,) * (k + 1), edges, g.sigma, g.alphabet)


def determinize(dag: LayeredDag, state_cap: int = DEFAULT_STATE_CAP) -> LayeredDag:
    """Subset construction from a virtual initial state with epsilon edges
    to all of layer 0. Subsets never mix layers, so the result is again
    layered, with a single state in layer 0."""
    by_layer: List[Dict[int, List[Tuple[int, int]]]] = [dict() for _ in range(dag.k)]
    for i, u, v, c in dag.edges:
        by_layer[i].setdefault(u, []).append((c, v))
    first = frozenset(range(dag.widths[0])) if dag.widths else frozenset()
    layers = [[first]]
    edges = []
    for i in range(dag.k):
        index: Dict[frozenset, int] = {}
        nxt: List[frozenset] = []
        for s_id, state in enumerate(layers[i]):
            moves: Dict[int, set] = {}
            for u in state:
                for c, v in by_layer[i].get(u, ()):
                    moves.setdefault(c, set()).add(v)
            for c in sorted(moves):
                target = frozenset(moves[c])
                t_id = index.get(target)
                if t_id is None:
                    if len(nxt) >= state_cap:
                        raise StateCapExceeded(
                            f"layer {i + 1} exceeds the state cap of {state_cap} subsets"
                        )
                    t_id = index[target] = len(nxt)
                    nxt.append(target)
                edges.append((i, s_id, t_id, c))
        layers.append(nxt)
    states = tuple(tuple(tuple(sorted(s)) for s in layer) for layer in layers)
    return LayeredDag(
        tuple(len(layer) for layer in layers), tuple(edges), dag.sigma, dag.alphabet, states
    )


def count_paths_layered(dag: LayeredDag, k=None) -> int:
    """Number of paths from layer 0 to layer ``k`` (default: the last layer).
    On a deterministic layered DAG with one initial state this is the number
    of distinct label strings of length ``k``."""
    if not dag.is_deterministic():
        raise ValueError("path counting needs a deterministic layered DAG; run determinize first")
    k = dag.k if k is None else check_k(k)
    if k > dag.k:
        raise ValueError(f"the DAG has only {dag.k} edge layers")
    if not dag.widths:
        return 0
    paths = [1] * dag.widths[0]
    by_layer: List[List[Tuple[int, int]]] = [[] for _ in range(dag.k)]
    for i, u, v, _ in dag.edges:
        by_layer[i].append((u, v))
    for i in range(k):
        nxt = [0] * dag.widths[i + 1]
        for u, v in by_layer[i]:
            nxt[v] += paths[u]
        paths = nxt
    return sum(paths)


def count_kmers_layered(g, k, state_cap: int = DEFAULT_STATE_CAP) -> int:
    """Distinct k-mers of any labeled graph via unfold + determinize."""
    g = check_graph(g)
    k = check_k(k)
    if k == 0:
        return 1
    return count_paths_layered(determinize(unfold(g, k), state_cap))


# --------------------------------------------------------------------------
# DNF gadget
# --------------------------------------------------------------------------

# clause markers sort after the binary labels '0' < '1'
_MARKERS = "".join(chr(c) for c in range(ord("A"), 127))


@dataclass(frozen=True)
class GadgetInfo:
    formula: DnfFormula
    graph: LabeledGraph
    d: tuple  # d[j]: branching nodes among the first nvars-1 of gadget j

    @property
    def k(self):
        return self.formula.nvars


def gadget_alphabet(nclauses: int) -> str:
    if nclauses > len(_MARKERS):
        raise ValueError(f"at most {len(_MARKERS)} clauses have a display marker")
    return "01" + _MARKERS[:nclauses]


def dnf_to_graph(f: DnfFormula) -> GadgetInfo:
    """One path gadget per clause, joined by a shared source.

    Vertex 0 is the shared source; gadget ``j`` owns vertices
    ``1 + j*(n+1) .. (j+1)*(n+1)``. Step ``i`` of a gadget carries label 1
    for a positive literal of ``x_i``, 0 for a negative one, and both for an
    absent variable. The source reaches gadget ``j`` with its own marker
    label ``2 + j``.
    """
    n = f.nvars
    if n < 1:
        raise ValueError("the gadget needs at least one variable")
    m = len(f.clauses)
    edges = []
    d = []
    for j, clause in enumerate(f.clauses):
        lits = {abs(l): l for l in clause}
        base = 1 + j * (n + 1)
        edges.append((0, base, 2 + j))
        branching = 0
        for i in range(1, n + 1):
            lit = lits.get(i)
            if lit is None:
                edges.append((base + i - 1, base + i, 0))
                edges.append((base + i - 1, base + i, 1))
                if i <= n - 1:
                    branching += 1
            else:
                edges.append((base + i - 1, base + i, 1 if lit > 0 else 0))
        d.append(branching)
    g = LabeledGraph.from_edges(1 + m * (n + 1), edges, 2 + m, gadget_alphabet(m), warn=False)
    if not check_deterministic(g)[0]:
        raise InternalConsistencyError("gadget graph is not deterministic")
    return GadgetInfo(f, g, tuple(d))


Counter = Union[str, Callable[[LabeledGraph, int], int]]


def _resolve_counter(counter: Counter) -> Callable[[LabeledGraph, int], int]:
    if callable(counter):
        return counter
    if counter == "brute":
        return count_kmers_brute
    if counter == "layered":
        return count_kmers_layered
    raise ValueError(f"unknown counter {counter!r}; use 'brute', 'layered' or a callable")


def sat_count_from_graph(gi: GadgetInfo, counter: Counter = "layered") -> int:
    """``N - sum(2**d_j)`` where ``N`` counts distinct n-mers of the gadget
    graph."""
    total = _resolve_counter(counter)(gi.graph, gi.k)
    result = total - sum(2**dj for dj in gi.d)
    if result < 0:
        raise InternalConsistencyError(
            f"negative model count {result}: counter returned {total} n-mers"
        )
    return result
