"""Command-line entry point.

Exit codes: 0 success, 1 validation or format failure, 2 resource cap
exceeded, 3 internal consistency violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .count_dp import count_kmers_dp
from .dbg import DbgData, build_explicit_dbg, format_dbg
from .doubling import count_kmers_doubling
from .errors import InternalConsistencyError, KmerGraphError
from .generators import dwg_suite
from .graph import format_graph, read_graph, validate_wheeler
from .lcs import compute_levels, lcs_from_chains
from .oracle import count_kmers_brute, kmer_counts, parse_dnf
from .validation import check_k
from .wheelerize import count_kmers_layered, determinize, dnf_to_graph, sat_count_from_graph, unfold


def _emit(obj):
    print(json.dumps(obj, separators=(",", ":")))


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _k(value):
    try:
        return check_k(int(value))
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_validate(args):
    g = read_graph(args.graph)
    w = validate_wheeler(g)
    _emit({"valid": True, "n": w.n, "m": w.m, "sigma": w.sigma, "sources": w.n_sources})


def _count(g, k, algo, cap):
    if algo == "dp":
        res = count_kmers_dp(validate_wheeler(g), k)
        return res.total, res.per_vertex.c
    if algo == "doubling":
        if k == 0:
            return 1, None
        res = count_kmers_doubling(validate_wheeler(g), k)
        return res.total, res.per_vertex.c
    if algo == "brute":
        return kmer_counts(g, k, cap)
    return count_kmers_layered(g, k), None


def cmd_count(args):
    g = read_graph(args.graph)
    total, per_vertex = _count(g, args.k, args.algo, args.oracle_cap)
    out = {"k": args.k, "algorithm": args.algo, "total": str(total)}
    if args.per_vertex:
        if per_vertex is None:
            raise ValueError(f"--per-vertex is not available for --algo {args.algo}")
        out["per_vertex"] = [str(c) for c in per_vertex]
    _emit(out)


def cmd_count_layered(args):
    g = read_graph(args.graph)
    _emit({"k": args.k, "algorithm": "layered", "total": str(count_kmers_layered(g, args.k))})


def cmd_lcs(args):
    w = validate_wheeler(read_graph(args.graph))
    lcs = compute_levels(w, args.k) if args.method == "levels" else lcs_from_chains(w, args.k)
    _emit(lcs.as_dict())


def _handle_json(h):
    return None if h is None else [h.u + 1, h.v + 1, h.j]


def cmd_dbg(args):
    g = read_graph(args.graph)
    w = validate_wheeler(g)
    if args.k < 2:
        raise ValueError("the de Bruijn simulation needs k >= 2")
    data = DbgData(w, args.k)
    out = {"k": args.k, "kmers": str(data.total)}
    if args.export:
        explicit = build_explicit_dbg(data)
        _write(args.export, format_dbg(explicit, g.alphabet))
        out["edges"] = len(explicit.edges)
    if args.query:
        queries = []
        for text in args.query:
            h = _lookup(g, data, text)
            entry = {"kmer": text, "handle": _handle_json(h)}
            if h is not None:
                entry["outgoing"] = [g.alphabet[c] for c in data.outgoing_labels(h)]
            queries.append(entry)
        out["queries"] = queries
    if args.walk:
        start, labels = args.walk
        h = _lookup(g, data, start)
        steps = [{"kmer": start, "handle": _handle_json(h)}]
        for ch in labels:
            if h is None:
                break
            c = g.alphabet.find(ch)
            h = data.forward(h, c) if c >= 0 else None
            steps.append(
                {"label": ch, "handle": _handle_json(h), "kmer": None if h is None else g.decode(data.spell(h.u, h.j))}
            )
        out["walk"] = steps
    if args.export != "-":
        _emit(out)


def _lookup(g, data, text):
    if len(text) != data.k:
        raise ValueError(f"query {text!r} is not a {data.k}-mer")
    try:
        return data.handle_of(g.encode(text))
    except ValueError:
        return None


def _read_dnf(path):
    with open(path, encoding="ascii") as fh:
        return parse_dnf(fh.read())


def cmd_gadget_build(args):
    gi = dnf_to_graph(_read_dnf(args.dnf))
    comment = f"DNF gadget: nvars={gi.k} clauses={len(gi.d)} d={' '.join(map(str, gi.d))}"
    _write(args.output, format_graph(gi.graph, comment))
    if args.output not in (None, "-"):
        _emit({"n": gi.graph.n, "m": gi.graph.m, "k": gi.k, "d": list(gi.d)})


def cmd_gadget_solve(args):
    gi = dnf_to_graph(_read_dnf(args.dnf))
    counter = count_kmers_brute if args.algo == "brute" else count_kmers_layered
    print(sat_count_from_graph(gi, counter))


def cmd_unfold(args):
    g = read_graph(args.graph)
    dag = unfold(g, args.k)
    if args.determinize:
        dag = determinize(dag)
    _write(args.output, format_graph(dag.as_graph(), f"{args.k}-times unfolded DAG"))


def cmd_selftest(args):
    failures = 0
    checked = 0
    for w in dwg_suite(args.seed, args.count, max_n=8, max_sigma=3):
        for k in (1, 2, 3, 5):
            dp = count_kmers_dp(w, k).total
            dbl = count_kmers_doubling(w, k).total
            brute = count_kmers_brute(w, k)
            checked += 1
            if not dp == dbl == brute:
                failures += 1
    _emit({"seed": args.seed, "instances": args.count, "checks": checked, "failures": failures})
    if failures:
        raise InternalConsistencyError(f"{failures} cross-engine mismatches")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmergraph", description=__doc__.splitlines()[0])
    p.add_argument("--json-errors", action="store_true", help="report errors as JSON on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check determinism and the Wheeler order")
    s.add_argument("graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("count", help="count distinct k-mers")
    s.add_argument("-k", type=_k, required=True)
    s.add_argument("--algo", choices=("dp", "doubling", "brute", "layered"), default="dp")
    s.add_argument("--per-vertex", action="store_true")
    s.add_argument("--oracle-cap", type=int, default=None)
    s.add_argument("graph")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("lcs", help="print capped ELCS/ILCS arrays")
    s.add_argument("-k", type=_k, required=True)
    s.add_argument("--method", choices=("levels", "chains"), default="levels")
    s.add_argument("graph")
    s.set_defaults(func=cmd_lcs)

    s = sub.add_parser("dbg", help="simulate the de Bruijn graph of order k")
    s.add_argument("-k", type=_k, required=True)
    s.add_argument("graph")
    s.add_argument("--export", metavar="PATH", help="write the explicit graph ('-' for stdout)")
    s.add_argument("--query", metavar="KMER", action="append")
    s.add_argument("--walk", nargs=2, metavar=("KMER", "LABELS"))
    s.set_defaults(func=cmd_dbg)

    s = sub.add_parser("gadget", help="DNF counting gadget")
    gsub = s.add_subparsers(dest="gadget_command", required=True)
    b = gsub.add_parser("build")
    b.add_argument("dnf")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_gadget_build)
    b = gsub.add_parser("solve")
    b.add_argument("--algo", choices=("brute", "layered"), default="layered")
    b.add_argument("dnf")
    b.set_defaults(func=cmd_gadget_solve)

    s = sub.add_parser("unfold", help="write the k-times unfolded DAG as WGF")
    s.add_argument("-k", type=_k, required=True)
    s.add_argument("--determinize", action="store_true")
    s.add_argument("graph")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_unfold)

    s = sub.add_parser("count-layered", help="count k-mers of any graph via unfold + determinize")
    s.add_argument("-k", type=_k, required=True)
    s.add_argument("graph")
    s.set_defaults(func=cmd_count_layered)

    s = sub.add_parser("selftest", help="cross-check the counters on generated graphs")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=40)
    s.set_defaults(func=cmd_selftest)
    return p


def _fail(args_json, payload, message, code):
    if args_json:
        print(json.dumps(payload), file=sys.stderr)
    else:
        print(f"kmergraph: {message}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except KmerGraphError as exc:
        return _fail(args.json_errors, exc.to_dict(), str(exc), exc.exit_code)
    except OSError as exc:
        return _fail(args.json_errors, {"error": "io", "message": str(exc)}, str(exc), 1)
    except ValueError as exc:
        return _fail(args.json_errors, {"error": "invalid", "message": str(exc)}, str(exc), 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
