"""scikit-learn style front ends.

Each estimator takes its settings in ``__init__`` (so ``get_params`` and
``set_params`` work), does all work in ``fit(X)`` where ``X`` is a graph,
and exposes results as trailing-underscore attributes.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .count_dp import count_kmers_dp
from .dbg import DbgData, build_explicit_dbg
from .doubling import count_kmers_doubling
from .lcs import compute_levels, lcs_from_chains
from .oracle import kmer_counts
from .validation import check_graph, check_k, check_wheeler_graph
from .wheelerize import count_kmers_layered

ALGORITHMS = ("dp", "doubling", "brute", "layered")


class KmerCounter(BaseEstimator):
    """Count distinct k-mers of a graph.

    ``dp`` and ``doubling`` need a deterministic Wheeler graph; ``brute``
    and ``layered`` accept any labeled graph.

    Attributes set by ``fit``: ``total_``, ``per_vertex_`` (``None`` for
    ``layered`` and for ``doubling`` with ``k = 0``), ``n_vertices_``.
    """

    def __init__(self, k=3, algorithm="dp", oracle_cap=None):
        self.k = k
        self.algorithm = algorithm
        self.oracle_cap = oracle_cap

    def fit(self, X, y=None):
        k = check_k(self.k)
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        per_vertex = None
        if self.algorithm == "dp":
            w = check_wheeler_graph(X)
            res = count_kmers_dp(w, k)
            total, per_vertex = res.total, res.per_vertex.c
        elif self.algorithm == "doubling":
            w = check_wheeler_graph(X)
            if k == 0:
                total = 1
            else:
                res = count_kmers_doubling(w, k)
                total, per_vertex = res.total, res.per_vertex.c
        elif self.algorithm == "brute":
            total, per_vertex = kmer_counts(X, k, self.oracle_cap)
        else:
            total = count_kmers_layered(X, k)
        self.total_ = total
        self.per_vertex_ = per_vertex
        self.n_vertices_ = check_graph(X).n
        return self


class LcsIndex(BaseEstimator):
    """Capped ELCS/ILCS arrays with constant-time ``share`` queries.

    ``method="levels"`` sweeps levels in O(|W| cap); ``"chains"`` walks the
    infimum/supremum chains pairwise, independent of the cap.
    """

    def __init__(self, cap=3, method="levels"):
        self.cap = cap
        self.method = method

    def fit(self, X, y=None):
        cap = check_k(self.cap, "cap")
        w = check_wheeler_graph(X)
        if self.method == "levels":
            self.lcs_ = compute_levels(w, cap)
        elif self.method == "chains":
            self.lcs_ = lcs_from_chains(w, cap)
        else:
            raise ValueError(f"method must be 'levels' or 'chains', got {self.method!r}")
        self.elcs_ = self.lcs_.elcs[1:]
        self.ilcs_ = self.lcs_.ilcs
        return self

    def share(self, ell, u, v):
        check_is_fitted(self, "lcs_")
        return self.lcs_.share(ell, u, v)


class DeBruijnSimulator(BaseEstimator):
    """Simulated node-centric de Bruijn graph of order ``k >= 2``.

    Queries take and return display strings; handles are
    :class:`~kmergraph.dbg.DbgHandle` values with 0-based vertices.
    """

    def __init__(self, k=3):
        self.k = k

    def fit(self, X, y=None):
        k = check_k(self.k, minimum=2)
        self.graph_ = check_wheeler_graph(X)
        self.data_ = DbgData(self.graph_, k)
        self.n_kmers_ = self.data_.total
        return self

    def _encode(self, text):
        return self.graph_.base.encode(text)

    def handle_of(self, kmer: str):
        check_is_fitted(self, "data_")
        try:
            codes = self._encode(kmer)
        except ValueError:
            return None
        return self.data_.handle_of(codes)

    def forward(self, handle, label: str):
        check_is_fitted(self, "data_")
        try:
            (c,) = self._encode(label)
        except ValueError:
            return None
        return self.data_.forward(handle, c)

    def outgoing_labels(self, handle):
        check_is_fitted(self, "data_")
        return [self.graph_.base.alphabet[c] for c in self.data_.outgoing_labels(handle)]

    def spell(self, handle) -> str:
        check_is_fitted(self, "data_")
        return self.graph_.base.decode(self.data_.spell(handle.u, handle.j))

    def walk(self, kmer: str, labels: str):
        """Handles visited from ``kmer`` following ``labels``; stops early
        (with a trailing ``None``) when an edge is missing."""
        h = self.handle_of(kmer)
        out = [h]
        for c in labels:
            if h is None:
                break
            h = self.forward(h, c)
            out.append(h)
        return out

    def to_explicit(self):
        check_is_fitted(self, "data_")
        return build_explicit_dbg(self.data_)
