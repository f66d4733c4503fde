"""Exact divisor theory on compact metric graphs (tropical curves).

Reduced divisors via burning and firing, the piecewise-affine trace of
the reduced-divisor map, Baker-Norine rank and Riemann-Roch, Weierstrass
loci, very-ampleness, and the classification of canonical divisors.  All
arithmetic is exact over the rationals.
"""

from .errors import (
    InternalInvariantError,
    InvalidInputError,
    OracleInfeasibleError,
    TropcurveError,
    UnsupportedError,
)
from .functions import (
    Divisor,
    PLFunction,
    canonical_divisor,
    distance_function,
    parse_divisor,
    principal_divisor,
)
from .graph import Edge, MetricGraph, Point
from .io import dump_graph, emit_plot, load_graph
from .rank import (
    RankResult,
    is_rank_determining,
    rank,
    rank_determining_points,
    riemann_roch_check,
)
from .rational import format_rational, parse_rational
from .reduction import (
    ReductionResult,
    lin_equiv,
    oracle_reduce,
    reduce,
    reduce_divisor,
)
from .redmap import (
    RedTrace,
    TraceSegment,
    base_witness,
    cell_dimension,
    dual_eval,
    one_skeleton_check,
    red,
    trace_all,
    trace_edge,
    vertex_generators,
)
from .special import (
    CanonicalClass,
    Locus,
    canonical_classification,
    d_weierstrass_locus,
    descent_weierstrass,
    is_very_ample,
    weierstrass_locus,
    weierstrass_test,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalClass",
    "Divisor",
    "Edge",
    "InternalInvariantError",
    "InvalidInputError",
    "Locus",
    "MetricGraph",
    "OracleInfeasibleError",
    "PLFunction",
    "Point",
    "RankResult",
    "RedTrace",
    "ReductionResult",
    "TraceSegment",
    "TropcurveError",
    "UnsupportedError",
    "base_witness",
    "canonical_classification",
    "canonical_divisor",
    "cell_dimension",
    "d_weierstrass_locus",
    "descent_weierstrass",
    "distance_function",
    "dual_eval",
    "dump_graph",
    "emit_plot",
    "format_rational",
    "is_rank_determining",
    "is_very_ample",
    "lin_equiv",
    "load_graph",
    "one_skeleton_check",
    "oracle_reduce",
    "parse_divisor",
    "parse_rational",
    "principal_divisor",
    "rank",
    "rank_determining_points",
    "red",
    "reduce",
    "reduce_divisor",
    "riemann_roch_check",
    "trace_all",
    "trace_edge",
    "vertex_generators",
    "weierstrass_locus",
    "weierstrass_test",
]
