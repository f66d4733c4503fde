"""Command-line interface.

One verb per capability: genus, reduce, rank, rr-check, trace,
weierstrass, very-ample, canonical, lin-equiv, corpus.  Graphs come from
a JSON file (--graph) or a named example curve (--curve).  All output is
JSON on stdout with rationals as "p/q" strings.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 internal
invariant violation (including oracle disagreement under
--oracle-check).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import curves
from .errors import (
    InternalInvariantError,
    InvalidInputError,
    OracleInfeasibleError,
    TropcurveError,
    UnsupportedError,
)
from .functions import Divisor, canonical_divisor, parse_divisor
from .graph import MetricGraph
from .io import dump_graph, emit_plot, graph_to_json, load_graph
from .rank import rank, riemann_roch_check
from .rational import format_rational
from .reduction import lin_equiv, oracle_reduce, reduce_divisor
from .redmap import trace_all, trace_edge
from .special import (
    canonical_classification,
    d_weierstrass_locus,
    descent_weierstrass,
    is_very_ample,
    weierstrass_locus,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_INVARIANT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _out(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _load(args) -> MetricGraph:
    if args.graph is not None:
        return load_graph(args.graph)
    name = args.curve
    if name not in curves.NAMED:
        known = ", ".join(sorted(curves.NAMED))
        raise InvalidInputError(f"unknown curve {name!r}; known: {known}")
    return curves.NAMED[name]()


def _divisor(G: MetricGraph, text: str) -> Divisor:
    return parse_divisor(text, G)


def _divisor_json(D: Divisor):
    return {
        "text": str(D),
        "terms": {str(p): c for p, c in D.items()},
        "degree": D.degree,
    }


# -- subcommands --------------------------------------------------------


def _cmd_genus(args):
    G = _load(args)
    K = canonical_divisor(G)
    _out({"genus": G.genus(), "canonical": _divisor_json(K)})
    return EXIT_OK


def _cmd_reduce(args):
    G = _load(args)
    D = _divisor(G, args.divisor)
    P = G.parse_point(args.base)
    res = reduce_divisor(G, D, P)
    out = {"base": str(P), "reduced": _divisor_json(res.divisor)}
    if args.witness:
        out["witness"] = res.function.to_json()
    if args.oracle_check:
        oracle = oracle_reduce(G, D, P)
        out["oracle"] = _divisor_json(oracle)
        if oracle != res.divisor:
            _out(out)
            print("error: reduce disagrees with oracle_reduce", file=sys.stderr)
            return EXIT_INVARIANT
    _out(out)
    return EXIT_OK


def _cmd_rank(args):
    G = _load(args)
    D = _divisor(G, args.divisor)
    res = rank(G, D)
    out = {"rank": res.rank}
    if res.certificate is not None:
        out["certificate"] = _divisor_json(res.certificate)
    _out(out)
    return EXIT_OK


def _random_divisor(G: MetricGraph, rnd: random.Random, degree: int) -> Divisor:
    terms = []
    deg = 0
    points = [G.vertex_point(v) for v in G.vertices]
    for e in G.edges:
        for k in (1, 2, 3):
            points.append(G.edge_point(e.id, e.length * Fraction(k, 4)))
    points = sorted(set(points), key=lambda p: str(p))
    while deg != degree:
        c = rnd.choice([-1, 1, 1, 2]) if deg < degree else -1
        c = min(c, degree - deg) if deg < degree else c
        terms.append((c, rnd.choice(points)))
        deg += c
    return Divisor.of(*terms)


def _cmd_rr_check(args):
    G = _load(args)
    g = G.genus()
    if args.divisor is not None:
        checked = [_divisor(G, args.divisor)]
    else:
        rnd = random.Random(args.seed)
        checked = [
            _random_divisor(G, rnd, rnd.randint(-2, 2 * g + 2))
            for _ in range(args.count)
        ]
    for D in checked:
        if not riemann_roch_check(G, D):
            _out({"ok": False, "failing": _divisor_json(D)})
            return EXIT_INVARIANT
    _out({"ok": True, "checked": len(checked)})
    return EXIT_OK


def _seg_json(G, seg):
    return {
        "edge": seg.edge,
        "t0": format_rational(seg.t0),
        "t1": format_rational(seg.t1),
        "constant": seg.is_constant,
        "excess": seg.excess,
        "at_t0": _divisor_json(seg.divisor_at(G, seg.t0)),
        "at_t1": _divisor_json(seg.divisor_at(G, seg.t1)),
    }


def _cmd_trace(args):
    G = _load(args)
    D = _divisor(G, args.divisor)
    if args.edge is not None:
        G.edge(args.edge)  # validates the id
        trace = trace_edge(G, D, args.edge)
    else:
        trace = trace_all(G, D)
    if args.emit_plot:
        emit_plot(trace, args.emit_plot)
    _out(
        {
            "divisor": _divisor_json(D),
            "segments": {
                eid: [_seg_json(G, s) for s in segs]
                for eid, segs in trace.segments.items()
            },
        }
    )
    return EXIT_OK


def _cmd_weierstrass(args):
    G = _load(args)
    if args.divisor is not None:
        locus = d_weierstrass_locus(G, _divisor(G, args.divisor))
        out = {"locus": locus.to_json()}
    else:
        locus = weierstrass_locus(G)
        out = {"locus": locus.to_json(), "descent_point": str(descent_weierstrass(G))}
    if args.emit_plot:
        emit_plot(locus, args.emit_plot)
    _out(out)
    return EXIT_OK


def _cmd_very_ample(args):
    G = _load(args)
    D = _divisor(G, args.divisor)
    va, witness = is_very_ample(G, D)
    _out(
        {
            "very_ample": va,
            "witness": [str(witness[0]), str(witness[1])] if witness else None,
        }
    )
    return EXIT_OK


def _cmd_canonical(args):
    G = _load(args)
    res = canonical_classification(G)
    _out(
        {
            "verdict": res.verdict,
            "witness": [str(res.witness[0]), str(res.witness[1])]
            if res.witness
            else None,
        }
    )
    return EXIT_OK


def _cmd_lin_equiv(args):
    G = _load(args)
    A = _divisor(G, args.divisor1)
    B = _divisor(G, args.divisor2)
    f = lin_equiv(G, A, B)
    out = {"equivalent": f is not None}
    if f is not None:
        out["function"] = f.to_json()
    _out(out)
    return EXIT_OK


def _cmd_corpus(args):
    named = curves.corpus()
    if args.write_dir:
        import os

        os.makedirs(args.write_dir, exist_ok=True)
        for name, G in named.items():
            dump_graph(G, os.path.join(args.write_dir, f"{name}.json"))
    _out({name: graph_to_json(G) for name, G in named.items()})
    return EXIT_OK


# -- argument wiring ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropcurve", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--graph", help="path to a graph JSON file")
        src.add_argument("--curve", default="theta", help="named example curve")
        return p

    add("genus", _cmd_genus, help="genus and canonical divisor")

    p = add("reduce", _cmd_reduce, help="P-reduced representative")
    p.add_argument("divisor", help="divisor spec, e.g. '2*(P) - 1*(e1@1/3)' or 'K'")
    p.add_argument("--base", required=True, help="base point, e.g. 'P' or 'e1@1/3'")
    p.add_argument("--witness", action="store_true", help="include the witness function")
    p.add_argument(
        "--oracle-check",
        action="store_true",
        help="cross-check against the unit-subdivision oracle (exit 3 on disagreement)",
    )

    p = add("rank", _cmd_rank, help="Baker-Norine rank")
    p.add_argument("divisor")

    p = add("rr-check", _cmd_rr_check, help="verify the Riemann-Roch identity")
    p.add_argument("--divisor", help="check one divisor instead of random ones")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)

    p = add("trace", _cmd_trace, help="piecewise-affine trace of the reduced-divisor map")
    p.add_argument("divisor")
    p.add_argument("--edge", help="trace one edge only")
    p.add_argument("--emit-plot", metavar="PATH", help="write TSV plot data")

    p = add("weierstrass", _cmd_weierstrass, help="(D-)Weierstrass locus")
    p.add_argument("--divisor", help="divisor D (default: canonical)")
    p.add_argument("--emit-plot", metavar="PATH", help="write TSV plot data")

    p = add("very-ample", _cmd_very_ample, help="injectivity of the reduced-divisor map")
    p.add_argument("divisor")

    add("canonical", _cmd_canonical, help="classify the canonical divisor")

    p = add("lin-equiv", _cmd_lin_equiv, help="decide linear equivalence")
    p.add_argument("divisor1")
    p.add_argument("divisor2")

    p = add("corpus", _cmd_corpus, help="print the named example curves")
    p.add_argument("--write-dir", metavar="DIR", help="also write one JSON file per curve")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_OK
    try:
        return args.fn(args)
    except (InvalidInputError, UnsupportedError, OracleInfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except TropcurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
