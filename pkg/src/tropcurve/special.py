"""Weierstrass loci, very-ampleness, and the canonical classification.

A point P is Weierstrass when the P-reduced canonical divisor carries at
least g chips at P; the locus of such points is read off the exact trace
of Red_K.  A divisor is very ample iff Red is injective, decided by
exact pairwise collision of trace segments.  Curves whose canonical
divisor fails to be very ample fall into four coarse-model families
(parallel-edge "banana", one four-valent loop vertex, a double-edge pair
of trivalent vertices, and two loop-carrying trivalent vertices), with
an exact length equality in the middle two cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InternalInvariantError, InvalidInputError, UnsupportedError
from .functions import Divisor, canonical_divisor
from .graph import MetricGraph, Point, ZERO
from .rank import has_nonneg_rank, rank
from .reduction import lin_equiv, reduce_divisor
from .redmap import RedTrace, red, trace_all


# -- Weierstrass points -------------------------------------------------


def weierstrass_test(G: MetricGraph, P: Point, D: Optional[Divisor] = None,
                     threshold: Optional[int] = None) -> bool:
    """True iff P is a (D-)Weierstrass point.

    With the default D = K and threshold g, this is the canonical
    Weierstrass condition red(K,P)(P) >= g; the coefficient is also
    checked against the universal lower bound g-1.
    """
    g = G.genus()
    if D is None:
        if g < 2:
            raise UnsupportedError("Weierstrass points need genus >= 2")
        D = canonical_divisor(G)
        threshold = g
        floor = g - 1
    else:
        if threshold is None:
            threshold = rank(G, D).rank + 1
        floor = None
    a = red(G, D, P)[P]
    if floor is not None and a < floor:
        raise InternalInvariantError(
            f"canonical reduced coefficient {a} below the g-1 bound at {P}"
        )
    return a >= threshold


@dataclass
class Locus:
    """A closed subset of the curve: per-edge sorted disjoint closed
    intervals (degenerate ones are isolated points) plus vertices."""

    graph: MetricGraph
    intervals: dict  # edge id -> list of (a, b) with a <= b
    vertices: list

    def is_empty(self) -> bool:
        return not self.vertices and not any(self.intervals.values())

    def contains(self, p: Point) -> bool:
        if p.is_vertex:
            return p.vertex in self.vertices
        return any(a <= p.offset <= b for a, b in self.intervals.get(p.edge, ()))

    def sample_points(self):
        pts = [self.graph.vertex_point(v) for v in self.vertices]
        for eid, ivs in self.intervals.items():
            for a, b in ivs:
                pts.append(self.graph.edge_point(eid, (a + b) / 2))
        return pts

    def to_json(self):
        from .rational import format_rational

        return {
            "vertices": list(self.vertices),
            "intervals": {
                eid: [[format_rational(a), format_rational(b)] for a, b in ivs]
                for eid, ivs in self.intervals.items()
                if ivs
            },
        }


def _merge_intervals(ivs):
    out = []
    for a, b in sorted(ivs):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def _threshold_locus(G: MetricGraph, D: Divisor, thr: int,
                     trace: Optional[RedTrace] = None) -> Locus:
    """Exact locus {P : red(D,P)(P) >= thr}, assembled from a trace."""
    if trace is None:
        trace = trace_all(G, D)
    vertices = [
        v for v in G.vertices
        if red(G, D, G.vertex_point(v))[G.vertex_point(v)] >= thr
    ]
    intervals = {}
    for e in G.edges:
        ivs = []
        for seg in trace.segments[e.id]:
            if seg.is_constant:
                # base coefficient equals the fixed divisor's coefficient
                for p, c in seg.static_part.items():
                    if c >= thr and not p.is_vertex and p.edge == e.id \
                            and seg.t0 <= p.offset <= seg.t1:
                        ivs.append((p.offset, p.offset))
            elif seg.base_chip_count >= thr:
                ivs.append((seg.t0, seg.t1))
            else:
                # chips merging at the segment ends can push the base
                # coefficient over the threshold there
                for t in (seg.t0, seg.t1):
                    bp = G.edge_point(e.id, t)
                    if not bp.is_vertex and seg.divisor_at(G, t)[bp] >= thr:
                        ivs.append((t, t))
        # clip interval ends that are vertices (offsets 0 and L stay in
        # the interval data; vertex membership is reported separately)
        intervals[e.id] = _merge_intervals(ivs)
    return Locus(G, intervals, vertices)


def weierstrass_locus(G: MetricGraph) -> Locus:
    """Exact canonical Weierstrass locus {P : red(K,P)(P) >= g}; nonempty
    for every curve of genus >= 2."""
    g = G.genus()
    if g < 2:
        raise UnsupportedError("Weierstrass locus needs genus >= 2")
    return _threshold_locus(G, canonical_divisor(G), g)


def d_weierstrass_locus(G: MetricGraph, D: Divisor) -> Locus:
    """Locus of D-Weierstrass points {P : red(D,P)(P) >= r(D)+1}."""
    r = rank(G, D).rank
    if r < 0:
        raise UnsupportedError("D-Weierstrass locus needs nonnegative rank")
    return _threshold_locus(G, D, r + 1)


def descent_weierstrass(G: MetricGraph) -> Point:
    """Find a canonical Weierstrass point by distance descent.

    Candidates are the trace breakpoints, segment midpoints, support
    offsets and vertices; they are scanned in increasing order of
    F(P) = min distance from P to the rest of the support of red(K,P),
    the quantity whose strict descent proves existence.
    """
    g = G.genus()
    if g < 2:
        raise UnsupportedError("Weierstrass points need genus >= 2")
    K = canonical_divisor(G)
    trace = trace_all(G, K)
    cands = {G.vertex_point(v) for v in G.vertices}
    for eid, segs in trace.segments.items():
        for seg in segs:
            for t in (seg.t0, seg.t1, (seg.t0 + seg.t1) / 2):
                cands.add(G.edge_point(eid, t))
            for t in (seg.t0, seg.t1):
                for p in seg.divisor_at(G, t).support():
                    cands.add(p)

    def F(p):
        E = red(G, K, p)
        dists = [G.distance(p, q) for q in E.support() if q != p]
        return min(dists) if dists else ZERO

    for p in sorted(cands, key=lambda p: (F(p), str(p))):
        if weierstrass_test(G, p):
            return p
    raise InternalInvariantError("no Weierstrass point found among trace candidates")


# -- coarse models ------------------------------------------------------


class CoarseModel:
    """The model with all 2-valent vertices suppressed.

    Each coarse edge is a chain of base-graph edges; `to_base` maps a
    coarse point to the corresponding point of the original graph.
    Requires a vertex of degree >= 3 somewhere (genus >= 2 suffices).
    """

    def __init__(self, G: MetricGraph):
        self.base = G
        verts = list(G.vertices)
        # each working edge: (id, u, v, length, chain); chain items are
        # (base edge id, flipped) covering the edge from u to v
        edges = {
            e.id: (e.id, e.u, e.v, e.length, [(e.id, False)]) for e in G.edges
        }

        def germs(v):
            out = []
            for eid, (_, u, w, _, _) in edges.items():
                if u == v:
                    out.append((eid, 0))
                if w == v:
                    out.append((eid, 1))
            return out

        changed = True
        while changed:
            changed = False
            for v in list(verts):
                gs = germs(v)
                if len(gs) != 2:
                    continue
                (a, ea), (b, eb) = gs
                if a == b:
                    # v is the sole vertex of an isolated circle
                    continue
                _, au, av, alen, achain = edges.pop(a)
                _, bu, bv, blen, bchain = edges.pop(b)
                if ea == 0:  # a starts at v: flip so it ends at v
                    au, av = av, au
                    achain = [(eid, not f) for eid, f in reversed(achain)]
                if eb == 1:  # b ends at v: flip so it starts at v
                    bu, bv = bv, bu
                    bchain = [(eid, not f) for eid, f in reversed(bchain)]
                nid = f"{a}~{b}"
                edges[nid] = (nid, au, bv, alen + blen, achain + bchain)
                verts.remove(v)
                changed = True
        if not verts:
            raise UnsupportedError("curve has no branch vertex (genus <= 1 circle)")
        self.graph = MetricGraph(
            verts, [(eid, u, v, ln) for eid, u, v, ln, _ in edges.values()]
        )
        self._chains = {eid: chain for eid, (_, _, _, _, chain) in edges.items()}

    def to_base(self, p: Point) -> Point:
        if p.is_vertex:
            return self.base.vertex_point(p.vertex)
        off = p.offset
        for eid, flipped in self._chains[p.edge]:
            L = self.base.edge(eid).length
            if off <= L:
                return self.base.edge_point(eid, L - off if flipped else off)
            off -= L
        raise InternalInvariantError("coarse offset exceeds chain length")


# -- very-ampleness -----------------------------------------------------


def _segment_chip_lines(G, e1, s1, e2, s2):
    """Candidate constraint lines m1*d1 - m2*d2 = c from chip coincidences."""

    def chip_terms(eid, seg):
        terms = list(seg.chips)
        for p, c in seg.static_part.items():
            if not p.is_vertex:
                terms.append((c, p.edge, p.offset, ZERO))
        return terms

    lines = []
    for _, ea, aa, ma in chip_terms(e1, s1):
        for _, eb, ab, mb in chip_terms(e2, s2):
            if ea == eb and (ma != 0 or mb != 0):
                lines.append((ma, -mb, ab - aa))  # ma*d1 - mb*d2 = ab - aa
    return lines


def _clip_line(A, B, C, d1max, d2max):
    """Points of the line A*d1 + B*d2 = C on the boundary of the box."""
    pts = []
    if B != 0:
        for d1 in (ZERO, d1max):
            d2 = (C - A * d1) / B
            if 0 <= d2 <= d2max:
                pts.append((d1, d2))
    if A != 0:
        for d2 in (ZERO, d2max):
            d1 = (C - B * d2) / A
            if 0 <= d1 <= d1max:
                pts.append((d1, d2))
    return pts


def _collide_pair(G, e1, s1, e2, s2):
    """Exact search for base points P != Q with equal traced divisors."""
    same = s1 is s2
    d1max = s1.t1 - s1.t0
    d2max = s2.t1 - s2.t0

    def witness_at(d1, d2):
        p1 = G.edge_point(e1, s1.t0 + d1)
        p2 = G.edge_point(e2, s2.t0 + d2)
        if p1 == p2:
            return None
        if s1.divisor_at(G, s1.t0 + d1) != s2.divisor_at(G, s2.t0 + d2):
            return None
        return (p1, p2)

    if s1.is_constant and s2.is_constant:
        if s1.static_part != s2.static_part:
            return None
        if same:
            if d1max == 0:
                return None
            return (
                witness_at(d1max / 3, 2 * d1max / 3)
                or witness_at(ZERO, d1max / 2)
                or witness_at(d1max / 2, d1max)
            )
        return (
            witness_at(d1max / 2, d2max / 2)
            or witness_at(ZERO, d2max / 2)
            or witness_at(d1max / 2, ZERO)
        )

    lines = _segment_chip_lines(G, e1, s1, e2, s2)
    cands = {(ZERO, ZERO), (ZERO, d2max), (d1max, ZERO), (d1max, d2max)}
    for A, B, C in lines:
        cands.update(_clip_line(A, B, C, d1max, d2max))
    for i, (A1, B1, C1) in enumerate(lines):
        for A2, B2, C2 in lines[i + 1:]:
            det = A1 * B2 - A2 * B1
            if det == 0:
                continue
            d1 = (C1 * B2 - C2 * B1) / det
            d2 = (A1 * C2 - A2 * C1) / det
            if 0 <= d1 <= d1max and 0 <= d2 <= d2max:
                cands.add((d1, d2))
    # a collision family can be a sub-segment of one of the lines whose
    # endpoints are among the candidates; probe between consecutive ones
    for A, B, C in lines:
        on_line = sorted(p for p in cands if A * p[0] + B * p[1] == C)
        for (x1, y1), (x2, y2) in zip(on_line, on_line[1:]):
            cands.add(((x1 + x2) / 2, (y1 + y2) / 2))
    for d1, d2 in sorted(cands):
        if same and d1 == d2:
            continue
        w = witness_at(d1, d2)
        if w:
            return w
    return None


def red_collision(G: MetricGraph, D: Divisor, trace: Optional[RedTrace] = None):
    """A pair (P, Q), P != Q, with red_P(D) = red_Q(D), or None if Red is
    injective.  Decided exactly on the piecewise-affine trace."""
    if trace is None:
        trace = trace_all(G, D)
    segs = [(eid, s) for eid, ss in sorted(trace.segments.items()) for s in ss]
    for i, (e1, s1) in enumerate(segs):
        for e2, s2 in segs[i:]:
            w = _collide_pair(G, e1, s1, e2, s2)
            if w is not None:
                p1, p2 = w
                if red(G, D, p1) != red(G, D, p2):
                    raise InternalInvariantError("collision witness failed recheck")
                return w
    return None


def is_very_ample(G: MetricGraph, D: Divisor):
    """(verdict, witness): whether Red_D is injective; when it is not, a
    pair of distinct points with equal reduced divisors."""
    if not has_nonneg_rank(G, D):
        raise UnsupportedError("very-ampleness is defined for divisors of rank >= 0")
    g = G.genus()
    deg = D.degree
    if deg >= 2 * g + 1:
        return True, None
    if deg == 2 * g and g >= 2:
        coarse = CoarseModel(G)
        H = coarse.graph
        is_banana = len(H.vertices) == 2 and not any(e.is_loop for e in H.edges)
        if not is_banana:
            return True, None
        P = coarse.to_base(H.vertex_point(H.vertices[0]))
        Q = coarse.to_base(H.vertex_point(H.vertices[1]))
        target = Divisor.of((g, P), (g, Q))
        if lin_equiv(G, D, target) is not None:
            return False, (P, Q)
        return True, None
    w = red_collision(G, D)
    return (w is None), w


# -- canonical classification ------------------------------------------


@dataclass
class CanonicalClass:
    verdict: str  # "VeryAmple", "C.I", "C.II", "C.II'", "C.III"
    witness: Optional[tuple] = None  # (P, Q) when not very ample


def _parallel_groups(H: MetricGraph):
    groups = {}
    for e in H.edges:
        if not e.is_loop:
            groups.setdefault(frozenset((e.u, e.v)), []).append(e)
    return groups


def _loops_at(H: MetricGraph, v: str):
    return [e for e in H.edges if e.is_loop and e.u == v]


def _match_families(G: MetricGraph, coarse: CoarseModel):
    """Yield (case, witness in G) candidates for the four non-very-ample
    canonical families; empty if the coarse shape/lengths match none."""
    H = coarse.graph
    g = G.genus()
    nv = len(H.vertices)
    loops = [e for e in H.edges if e.is_loop]
    groups = _parallel_groups(H)

    def basep(p):
        return coarse.to_base(p)

    # C.I: two branch vertices joined by g+1 parallel edges
    if nv == 2 and not loops and len(groups) == 1 and len(H.edges) == g + 1:
        P, Q = H.vertices
        yield "C.I", (basep(H.vertex_point(P)), basep(H.vertex_point(Q)))
        return

    if g == 2:
        # degenerate shapes: the degree-g points are 2-valent and were
        # suppressed; witnesses are symmetric points on a loop
        if nv == 1 and len(loops) == 2 and len(H.edges) == 2:
            # figure-eight
            for e in loops:
                P = basep(H.edge_point(e.id, e.length / 4))
                Q = basep(H.edge_point(e.id, 3 * e.length / 4))
                yield "C.II", (P, Q)
        if nv == 2 and len(loops) == 2 and len(H.edges) == 3:
            # dumbbell: a loop at each vertex plus one bridge
            if all(len(_loops_at(H, v)) == 1 for v in H.vertices):
                for e in loops:
                    P = basep(H.edge_point(e.id, e.length / 4))
                    Q = basep(H.edge_point(e.id, 3 * e.length / 4))
                    yield "C.III", (P, Q)
        return

    # C.II: P, Q of degree g with g-1 parallel edges, a 4-valent loop
    # vertex R in the middle of the remaining connection, |PR| = |RQ|
    if nv == 3 and len(loops) == 1:
        R = loops[0].u
        others = [v for v in H.vertices if v != R]
        if len(others) == 2:
            P, Q = others
            par = groups.get(frozenset((P, Q)), [])
            pr = groups.get(frozenset((P, R)), [])
            rq = groups.get(frozenset((R, Q)), [])
            if (
                len(par) == g - 1 and len(pr) == 1 and len(rq) == 1
                and len(H.edges) == g + 2
                and pr[0].length == rq[0].length
            ):
                yield "C.II", (basep(H.vertex_point(P)), basep(H.vertex_point(Q)))
        return

    # C.II': four branch vertices, deg(P)=deg(Q)=g, deg(R)=deg(S)=3.
    # (No further family exists in genus >= 3: witnesses there must be
    # non-cut branch vertices of degree g carrying a nonzero witness
    # slope, and any edge carrying one either lies on a cycle -- forcing
    # a length equality as in C.II/C.II' -- or is a bridge, which would
    # make the witness a cut vertex and break reducedness at its twin.
    # The all-lengths-arbitrary family C.III is therefore the genus-two
    # dumbbell handled above, whose witnesses are 2-valent points.)
    if nv == 4:
        if not loops:
            # C.II': g-1 parallel P-Q, double edge R-S, single P-R and
            # Q-S, with |PR| = |QS|
            doubles = [k for k, es in groups.items() if len(es) == 2]
            par_groups = [k for k, es in groups.items() if len(es) == g - 1]
            for rs in doubles:
                for pq in par_groups:
                    if rs & pq:
                        continue
                    for R, S in (tuple(sorted(rs)), tuple(reversed(sorted(rs)))):
                        for P, Q in (tuple(sorted(pq)), tuple(reversed(sorted(pq)))):
                            pr = groups.get(frozenset((P, R)), [])
                            qs = groups.get(frozenset((Q, S)), [])
                            if (
                                len(pr) == 1 and len(qs) == 1
                                and len(H.edges) == g + 3
                                and pr[0].length == qs[0].length
                            ):
                                yield "C.II'", (
                                    basep(H.vertex_point(P)),
                                    basep(H.vertex_point(Q)),
                                )
            return
    return


def canonical_classification(G: MetricGraph) -> CanonicalClass:
    """Classify the canonical divisor per the four non-very-ample
    families; the verdict is cross-validated against the injectivity of
    Red_K and witnesses against their reduced-divisor identity."""
    g = G.genus()
    if g < 2:
        raise UnsupportedError("canonical classification needs genus >= 2")
    for v in G.vertices:
        if len(G.germs(v)) == 1:
            raise InvalidInputError(f"vertex {v!r} has degree one (leaf)")
    K = canonical_divisor(G)
    coarse = CoarseModel(G)

    def witness_valid(P, Q):
        want = Divisor.of((g - 1, P), (g - 1, Q))
        return red(G, K, P) == want and red(G, K, Q) == want

    candidates = list(_match_families(G, coarse))
    verdict = None
    for case, (P, Q) in candidates:
        if witness_valid(P, Q):
            verdict = CanonicalClass(case, (P, Q))
            break
    if candidates and verdict is None:
        raise InternalInvariantError("matched canonical family but no witness validates")
    if verdict is None:
        verdict = CanonicalClass("VeryAmple", None)

    va, _ = is_very_ample(G, K)
    if va != (verdict.verdict == "VeryAmple"):
        raise InternalInvariantError(
            f"classification {verdict.verdict} disagrees with Red_K injectivity ({va})"
        )
    return verdict
