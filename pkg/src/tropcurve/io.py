"""Graph file I/O and plot-data emission.

Graph files are JSON: {"vertices": ["P", "Q"], "edges": [{"id": "e1",
"ends": ["P", "Q"], "length": "3/2"}, ...]}.  Lengths are "p/q" strings
or integers; nothing is ever serialized as a float.  Plot data is TSV
with exact-rational columns followed by 12-significant-digit decimal
mirrors for external plotting tools.
"""

from __future__ import annotations

import json

from .errors import InvalidInputError
from .graph import MetricGraph
from .rational import format_rational, parse_rational, rational_to_decimal


def graph_to_json(G: MetricGraph) -> dict:
    return {
        "vertices": list(G.vertices),
        "edges": [
            {"id": e.id, "ends": [e.u, e.v], "length": format_rational(e.length)}
            for e in G.edges
        ],
    }


def graph_from_json(data) -> dict:
    if not isinstance(data, dict):
        raise InvalidInputError("graph JSON must be an object")
    for key in ("vertices", "edges"):
        if key not in data:
            raise InvalidInputError(f"graph JSON is missing {key!r}")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise InvalidInputError("'vertices' must be a list of strings")
    edges = []
    for i, e in enumerate(data["edges"]):
        if not isinstance(e, dict):
            raise InvalidInputError(f"edge #{i} must be an object")
        for key in ("id", "ends", "length"):
            if key not in e:
                raise InvalidInputError(f"edge #{i} is missing {key!r}")
        ends = e["ends"]
        if not (isinstance(ends, list) and len(ends) == 2):
            raise InvalidInputError(f"edge {e['id']!r}: 'ends' must be a pair")
        edges.append((e["id"], ends[0], ends[1], parse_rational(e["length"])))
    return MetricGraph(vertices, edges)


def load_graph(path: str) -> MetricGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read graph file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"graph file {path!r} is not valid JSON: {exc}") from exc
    return graph_from_json(data)


def dump_graph(G: MetricGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(G), fh, indent=2, sort_keys=True)
        fh.write("\n")


# -- plot emission ------------------------------------------------------


def _row(cells) -> str:
    return "\t".join(cells) + "\n"


def trace_plot_rows(trace):
    """TSV rows for a trace: one row per segment endpoint with the full
    chip configuration (exact and decimal columns)."""
    G = trace.graph
    yield _row(["edge", "t", "t_dec", "divisor", "cells"])
    for eid in sorted(trace.segments):
        for seg in trace.segments[eid]:
            for t in (seg.t0, seg.t1):
                D = seg.divisor_at(G, t)
                yield _row(
                    [
                        eid,
                        format_rational(t),
                        rational_to_decimal(t),
                        str(D),
                        str(len(seg.chips)),
                    ]
                )


def locus_plot_rows(locus):
    """TSV rows for a locus: one row per vertex and per interval."""
    yield _row(["kind", "where", "a", "a_dec", "b", "b_dec"])
    for v in sorted(locus.vertices):
        yield _row(["vertex", v, "", "", "", ""])
    for eid in sorted(locus.intervals):
        for a, b in locus.intervals[eid]:
            yield _row(
                [
                    "interval",
                    eid,
                    format_rational(a),
                    rational_to_decimal(a),
                    format_rational(b),
                    rational_to_decimal(b),
                ]
            )


def emit_plot(obj, path: str) -> None:
    """Write the TSV plot data of a RedTrace or a Locus to `path`."""
    if hasattr(obj, "segments"):
        rows = trace_plot_rows(obj)
    elif hasattr(obj, "intervals"):
        rows = locus_plot_rows(obj)
    else:
        raise InvalidInputError(f"cannot plot object of type {type(obj).__name__}")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.writelines(rows)
    except OSError as exc:
        raise InvalidInputError(f"cannot write plot file {path!r}: {exc}") from exc
