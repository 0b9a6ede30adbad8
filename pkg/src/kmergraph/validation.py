"""Input validation helpers in the spirit of ``sklearn.utils.validation``."""
from __future__ import annotations

import numbers
import os

from .graph import LabeledGraph, WheelerGraph, parse_graph, validate_wheeler

DEFAULT_ORACLE_CAP = 10**6
ORACLE_CAP_ENV = "KMERGRAPH_ORACLE_CAP"


def check_k(k, name="k", minimum=0):
    """Validate a walk length and return it as ``int``."""
    if isinstance(k, bool) or not isinstance(k, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(k).__name__}")
    k = int(k)
    if k < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {k}")
    return k


def check_graph(g) -> LabeledGraph:
    """Accept a :class:`LabeledGraph`, a :class:`WheelerGraph`, or WGF text."""
    if isinstance(g, WheelerGraph):
        return g.base
    if isinstance(g, LabeledGraph):
        return g
    if isinstance(g, str):
        return parse_graph(g)
    raise TypeError(f"expected a LabeledGraph, WheelerGraph or WGF text, got {type(g).__name__}")


def check_wheeler_graph(g) -> WheelerGraph:
    """Return a validated :class:`WheelerGraph`, validating if needed."""
    if isinstance(g, WheelerGraph):
        return g
    return validate_wheeler(check_graph(g))


def resolve_oracle_cap(cap=None) -> int:
    """Explicit ``cap`` wins, then ``$KMERGRAPH_ORACLE_CAP``, then 10**6."""
    if cap is None:
        env = os.environ.get(ORACLE_CAP_ENV)
        if env:
            try:
                cap = int(env)
            except ValueError:
                raise ValueError(f"{ORACLE_CAP_ENV}={env!r} is not an integer") from None
        else:
            cap = DEFAULT_ORACLE_CAP
    return check_k(cap, "oracle cap", minimum=1)
