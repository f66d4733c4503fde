"""The reduced-divisor map and its piecewise-affine trace.

For a divisor D of nonnegative rank, Red sends a base point P to the
P-reduced representative of the class of D.  Red is integral affine:
along an edge it decomposes into finitely many segments on which the
reduced divisor is an affine function of the base parameter, described
by a saturated cut Y, an integer excess, a set of moving chips, and a
static remainder.  `trace_edge` computes that decomposition exactly by
event-driven stepping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InternalInvariantError, UnsupportedError
from .functions import Divisor, PLFunction, divisor_to_refined
from .graph import MetricGraph, Point, ZERO
from .reduction import Cut, burn_model, reduce_divisor

MAX_EVENTS = 10_000


def red(G: MetricGraph, D: Divisor, P: Point) -> Divisor:
    """The P-reduced divisor linearly equivalent to D (requires r(D) >= 0)."""
    res = reduce_divisor(G, D, P)
    if not res.divisor.is_effective:
        raise UnsupportedError("divisor has rank -1; the reduced-divisor map is undefined")
    return res.divisor


def base_witness(G: MetricGraph, D: Divisor, P: Point) -> PLFunction:
    """The normalized witness f_P with D + div(f_P) = red_P(D), f_P(P) = 0."""
    res = reduce_divisor(G, D, P)
    if not res.divisor.is_effective:
        raise UnsupportedError("divisor has rank -1")
    return res.function.shift(-res.function.evaluate(P))


def dual_eval(G: MetricGraph, D: Divisor, Q: Point, P: Point) -> Fraction:
    """Value of the dual function at P with base Q: -f_P(Q)."""
    return -base_witness(G, D, P).evaluate(Q)


@dataclass
class TraceSegment:
    """Affine behavior of Red on a parameter interval of one edge.

    On [t0, t1] the reduced divisor equals `static_part` plus, for each
    (multiplicity, edge id, start offset, slope) in `chips`, that many
    chips at offset start + slope*(t - t0).  The base point's own chips
    are the entry with |slope| = 1 on the traced edge; `cut` is None for
    constant segments.
    """

    edge: str
    t0: Fraction
    t1: Fraction
    cut: Optional[Cut]
    excess: int
    base_chip_count: int
    static_part: Divisor
    chips: list = field(default_factory=list)

    @property
    def is_constant(self) -> bool:
        return self.cut is None

    def divisor_at(self, G: MetricGraph, t: Fraction) -> Divisor:
        if not self.t0 <= t <= self.t1:
            raise InternalInvariantError("parameter outside segment")
        D = self.static_part
        for mult, eid, off, slope in self.chips:
            D = D + Divisor.of((mult, G.edge_point(eid, off + slope * (t - self.t0))))
        return D


@dataclass
class RedTrace:
    """Per-edge decomposition of Red into affine segments."""

    graph: MetricGraph
    divisor: Divisor
    segments: dict  # edge id -> ordered list of TraceSegment

    def divisor_at(self, eid: str, t: Fraction) -> Divisor:
        for seg in self.segments[eid]:
            if seg.t0 <= t <= seg.t1:
                return seg.divisor_at(self.graph, t)
        raise InternalInvariantError("parameter not covered by trace")

    def all_segments(self):
        return [s for segs in self.segments.values() for s in segs]


def maximal_saturated_cut(G: MetricGraph, E: Divisor, P: Point, eid: str, t: Fraction):
    """The maximal saturated cut meeting [P, P+delta) only in P, for the
    germ at P along edge `eid` in the direction of increasing offset
    (P sits at offset t on that edge).

    Returns (refinement, sub-edge id, burnt set, unburnt set); the
    unburnt set is empty iff E stays reduced just beyond P (constant
    case).  E must be P-reduced.
    """
    ref = G.refine([P] + E.support())
    W = ref.graph
    chips = {v: 0 for v in W.vertices}
    for p, c in divisor_to_refined(ref, E).items():
        if c < 0:
            raise UnsupportedError("divisor must be effective (P-reduced) for cut search")
        chips[p.vertex] = c
    s0 = None
    for start, end, nid in ref.pieces_of(eid):
        if start == t:
            s0 = W.edge(nid)
            break
    if s0 is None:
        raise InternalInvariantError("base point is not a model vertex at its offset")
    # fire starts just beyond P inside s0 and spreads through its interior
    seeds = [(s0.u, s0.id, 0), (s0.v, s0.id, 1)]
    burnt = burn_model(W, chips, seed_germs=seeds)
    unburnt = set(W.vertices) - burnt
    Pw = ref.to_refined(P).vertex
    if unburnt and Pw not in unburnt:
        raise InternalInvariantError("unburnt cut does not contain the base point")
    return ref, s0, burnt, unburnt


def trace_edge(G: MetricGraph, D: Divisor, eid: str) -> RedTrace:
    """Exact piecewise-affine trace of t -> red(D, point at offset t on e)."""
    e = G.edge(eid)
    L = e.length
    t = ZERO
    E = red(G, D, G.vertex_point(e.u))
    segments = []
    for _ in range(MAX_EVENTS):
        if t >= L:
            break
        P = G.edge_point(eid, t)
        E = reduce_divisor(G, E, P).divisor
        ref, s0, burnt, unburnt = maximal_saturated_cut(G, E, P, eid, t)
        W = ref.graph
        chips = {v: 0 for v in W.vertices}
        for p, c in divisor_to_refined(ref, E).items():
            chips[p.vertex] = c
        Pw = ref.to_refined(P).vertex

        def interior_burnt(edge):
            return edge.id == s0.id or edge.u in burnt or edge.v in burnt

        if not unburnt:
            # constant case: E stays reduced until the next model vertex
            t1 = t + s0.length
            segments.append(
                TraceSegment(eid, t, t1, None, 0, E[P], E, chips=[])
            )
            t = t1
            continue

        out_germs = []
        for v in unburnt:
            for edge, end in W.germs(v):
                if interior_burnt(edge):
                    out_germs.append((v, edge, end))
        out_P = sum(1 for v, edge, end in out_germs if v == Pw)
        ex = chips[Pw] - out_P + 1
        if ex < 1:
            raise InternalInvariantError("nonpositive excess at base point")
        moving = [g for g in out_germs if g != (Pw, s0, 0)]

        # event candidates (in base-parameter time delta)
        cands = []
        far_unburnt = False
        for v, edge, end in moving:
            if edge.id == s0.id:
                # head-on approach toward the moving base point
                far_unburnt = True
                cands.append(edge.length / (1 + ex))
            else:
                cands.append(edge.length / Fraction(ex))
        if not far_unburnt:
            cands.append(s0.length)  # base reaches the far model vertex
        delta = min(cands)
        t1 = t + delta

        # assemble the affine chip system in base-graph coordinates
        chips_sys = [(ex, eid, t, Fraction(1))]
        for v, edge, end in moving:
            gid, s = ref._seg[edge.id]
            if end == 0:
                chips_sys.append((1, gid, s, Fraction(ex)))
            else:
                chips_sys.append((1, gid, s + edge.length, Fraction(-ex)))
        static = Divisor.zero()
        for v in W.vertices:
            if v == Pw:
                continue
            out_v = sum(1 for vv, _, _ in out_germs if vv == v) if v in unburnt else 0
            c = chips[v] - out_v
            if c:
                static = static + Divisor.of((c, ref.to_base(W.vertex_point(v))))

        seg = TraceSegment(
            eid, t, t1, Cut(W, frozenset(unburnt)), ex, ex, static, chips=chips_sys
        )
        if seg.divisor_at(G, t) != E:
            raise InternalInvariantError("trace segment does not start at the reduced divisor")
        if seg.divisor_at(G, t1).degree != D.degree:
            raise InternalInvariantError("trace segment is not degree-conserving")
        segments.append(seg)
        E = seg.divisor_at(G, t1)
        t = t1
    else:
        raise InternalInvariantError("edge trace did not terminate")
    return RedTrace(G, D, {eid: segments})


def trace_all(G: MetricGraph, D: Divisor) -> RedTrace:
    """Trace every edge of the model."""
    segs = {}
    for e in G.edges:
        segs[e.id] = trace_edge(G, D, e.id).segments[e.id]
    return RedTrace(G, D, segs)


# -- cells and generators ----------------------------------------------


def cell_dimension(G: MetricGraph, E: Divisor) -> int:
    """Dimension of the cell of |D| containing the effective divisor E:
    one less than the number of connected components of the curve with
    the edge-interior support points of E removed."""
    if not E.is_effective:
        raise UnsupportedError("cell dimension is defined for effective divisors")
    interior = [p for p in E.support() if not p.is_vertex]
    ref = G.refine(interior)
    W = ref.graph
    removed = {ref.to_refined(p).vertex for p in interior}
    parent = {v: v for v in W.vertices if v not in removed}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    extra = 0
    for edge in W.edges:
        ru, rv = edge.u in removed, edge.v in removed
        if not ru and not rv:
            parent[find(edge.u)] = find(edge.v)
        elif ru and rv:
            # an open segment between two removed points is its own component
            extra += 1
    comps = len({find(v) for v in parent}) + extra
    return comps - 1


def one_skeleton_check(trace: RedTrace) -> bool:
    """Every divisor along the trace lies in a cell of dimension <= 1,
    checked at segment endpoints and one interior parameter each."""
    G = trace.graph
    for seg in trace.all_segments():
        ts = [seg.t0, seg.t1]
        if seg.t0 != seg.t1:
            ts.append((seg.t0 + seg.t1) / 2)
        for t in ts:
            if cell_dimension(G, seg.divisor_at(G, t)) > 1:
                return False
    return True


def vertex_generators(G: MetricGraph, D: Divisor):
    """Extremal trace values: divisors of cell dimension 0 encountered at
    trace breakpoints, each with its normalized witness f_P (f_P(P)=0)."""
    trace = trace_all(G, D)
    found = []
    seen = set()
    for eid, segs in trace.segments.items():
        for seg in segs:
            for t in (seg.t0, seg.t1):
                E = seg.divisor_at(G, t)
                if E in seen:
                    continue
                if cell_dimension(G, E) == 0:
                    seen.add(E)
                    P = G.edge_point(eid, t)
                    found.append((E, base_witness(G, D, P)))
    return found


def phi_coordinates(G: MetricGraph, D: Divisor, P: Point, generators):
    """Tropical-projective coordinates of P: the vector (f(P)) over the
    generator witnesses, well-defined up to a common additive constant."""
    return [f.evaluate(P) for _, f in generators]
