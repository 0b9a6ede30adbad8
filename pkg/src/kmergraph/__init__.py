"""Distinct k-mer counting and de Bruijn graph simulation on deterministic
Wheeler graphs."""

from .count_dp import count_kmers_dp
from .dbg import DbgData, DbgHandle, build_explicit_dbg
from .doubling import count_kmers_doubling, ladder
from .errors import (
    InternalConsistencyError,
    KmerGraphError,
    OracleTooLarge,
    OutOfCap,
    ParseError,
    ResourceCapExceeded,
    StateCapExceeded,
    WheelerViolation,
)
from .estimators import DeBruijnSimulator, KmerCounter, LcsIndex
from .graph import LabeledGraph, WheelerGraph, format_graph, is_wheeler, parse_graph, read_graph, validate_wheeler
from .lcs import LcsData, compute_levels, lcs_from_chains
from .oracle import DnfFormula, build_dbg_brute, count_kmers_brute, enumerate_kmers
from .wheelerize import count_kmers_layered, determinize, dnf_to_graph, sat_count_from_graph, unfold

__version__ = "0.1.0"

__all__ = [
    "DbgData",
    "DbgHandle",
    "DeBruijnSimulator",
    "DnfFormula",
    "InternalConsistencyError",
    "KmerCounter",
    "KmerGraphError",
    "LabeledGraph",
    "LcsData",
    "LcsIndex",
    "OracleTooLarge",
    "OutOfCap",
    "ParseError",
    "ResourceCapExceeded",
    "StateCapExceeded",
    "WheelerGraph",
    "WheelerViolation",
    "build_dbg_brute",
    "build_explicit_dbg",
    "compute_levels",
    "count_kmers_brute",
    "count_kmers_doubling",
    "count_kmers_dp",
    "count_kmers_layered",
    "determinize",
    "dnf_to_graph",
    "enumerate_kmers",
    "format_graph",
    "is_wheeler",
    "ladder",
    "lcs_from_chains",
    "parse_graph",
    "read_graph",
    "sat_count_from_graph",
    "unfold",
    "validate_wheeler",
]
