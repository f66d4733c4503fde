"""Reduced divisors on metric graphs.

Given a divisor D and a base point v0, there is a unique divisor
linearly equivalent to D that is effective away from v0 and on which
every saturated firing move away from v0 is blocked (Dhar's burning
criterion).  `reduce_divisor` computes it exactly together with a
witness PL function; `oracle_reduce` recomputes it by brute-force
integer chip-firing on a unit subdivision and is used for
cross-validation only.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InternalInvariantError, OracleInfeasibleError
from .functions import (
    Divisor,
    PLFunction,
    divisor_to_base,
    divisor_to_refined,
    distance_function,
    principal_divisor,
    pull_to_base,
)
from .graph import MetricGraph, Point, ZERO

MAX_ROUNDS = 100_000

DEFAULT_ORACLE_BUDGET = 200_000
ORACLE_BUDGET_ENV = "TROPICURVE_ORACLE_BUDGET"


# -- burning ------------------------------------------------------------


def burn_model(model: MetricGraph, chips, seed_vertices=(), seed_germs=()):
    """Dhar burning on a model whose chips all sit at vertices.

    `chips` maps vertex id -> chip count.  Fire starts at the
    `seed_vertices` (which burn unconditionally) and along `seed_germs`,
    given as (vertex, edge_id, end) triples: fire entering that vertex
    along that germ.  A vertex burns when its burnt-germ count exceeds
    its chip count.  Returns the set of burnt vertices.
    """
    burnt = set(seed_vertices)
    seeded = {(v, eid, end) for v, eid, end in seed_germs}
    changed = True
    while changed:
        changed = False
        for v in model.vertices:
            if v in burnt:
                continue
            c = 0
            for e, end in model.germs(v):
                other = e.v if end == 0 else e.u
                if (v, e.id, end) in seeded or (other in burnt and not e.is_loop):
                    c += 1
            if c > chips.get(v, 0):
                burnt.add(v)
                changed = True
    return burnt


def out_degree(model: MetricGraph, unburnt, v: str) -> int:
    """Number of germs at v leaving the unburnt set (loops never leave)."""
    if isinstance(unburnt, Cut):
        unburnt = unburnt.vertices
    out = 0
    for e, end in model.germs(v):
        other = e.v if end == 0 else e.u
        if not e.is_loop and other not in unburnt:
            out += 1
    return out


@dataclass(frozen=True)
class Cut:
    """A closed subgraph given by the vertices of a model it spans."""

    model: MetricGraph
    vertices: frozenset


@dataclass
class BurnReport:
    """Outcome of Dhar burning from a base point: the refined model used,
    its chip placement, and the unburnt vertex set (empty iff reduced)."""

    model: MetricGraph
    refinement: object
    chips: dict
    unburnt: frozenset

    @property
    def is_reduced(self) -> bool:
        return not self.unburnt

    @property
    def cut(self) -> Optional[Cut]:
        if not self.unburnt:
            return None
        return Cut(self.model, self.unburnt)


def burn(G: MetricGraph, D: Divisor, v0: Point) -> BurnReport:
    """Burn from v0 on a model refined at the support of D.

    Fire spreads from v0 through edge interiors; a chip-carrying point
    halts incoming germs until their number exceeds its chip count.  The
    unburnt set is empty iff D is v0-reduced (for effective-away-from-v0
    divisors).
    """
    G.require_point(v0)
    ref = G.refine([v0] + D.support())
    W = ref.graph
    chips = {v: 0 for v in W.vertices}
    for p, c in divisor_to_refined(ref, D).items():
        chips[p.vertex] = c
    burnt = burn_model(W, chips, seed_vertices=[ref.to_refined(v0).vertex])
    return BurnReport(W, ref, chips, frozenset(set(W.vertices) - burnt))


@dataclass
class ReductionResult:
    """Outcome of reduction: the reduced divisor, a witness f with
    D + div(f) = divisor, and per-round diagnostics."""

    divisor: Divisor
    function: PLFunction
    base_point: Point
    deficit_firings: int = 0
    dhar_rounds: int = 0
    potentials: list = field(default_factory=list)


def _potential(G: MetricGraph, D: Divisor, dist_fn: PLFunction, v0: Point):
    """Descending multiset of base-point distances of chips away from v0."""
    dists = []
    for p, c in D.items():
        if p != v0 and c > 0:
            dists.extend([dist_fn.evaluate(p)] * c)
    return tuple(sorted(dists, reverse=True))


def _clamped_distance(G: MetricGraph, dist_fn: PLFunction, r: Fraction) -> PLFunction:
    """min(dist(v0, .), r) as a PLFunction, computed exactly."""
    cap = PLFunction.constant(G, r)
    # min(a, b) = -max(-a, -b)
    return dist_fn.scale(-1).tropical_add(cap.scale(-1)).scale(-1)


def reduce_divisor(G: MetricGraph, D: Divisor, v0: Point) -> ReductionResult:
    """Compute the v0-reduced representative of the class of D.

    Phase A clears deficits away from v0 by firing balls centered at v0
    (farthest deficit first; branch vertices inside a ball may pick up
    new, strictly closer deficits, so this iterates).  Phase B runs
    Dhar's burning on a model refined at the current support and fires
    the unburnt cut until everything burns.  The witness function is
    accumulated on G throughout and the identity D + div(f) = result is
    re-verified before returning.
    """
    G.require_point(v0)
    dist_fn = distance_function(G, v0)
    f_total = PLFunction.zero(G)
    cur = D
    result = ReductionResult(Divisor.zero(), f_total, v0)

    # Phase A: clear deficits outside v0.
    for _ in range(MAX_ROUNDS):
        deficits = [(dist_fn.evaluate(p), p, -c) for p, c in cur.items() if c < 0 and p != v0]
        if not deficits:
            break
        deficits.sort(key=lambda t: (-t[0], str(t[1])))
        r, q, m = deficits[0]
        fire = _clamped_distance(G, dist_fn, r).scale(-m)
        cur = cur + principal_divisor(G, fire)
        f_total = f_total + fire
        result.deficit_firings += 1
    else:
        raise InternalInvariantError("deficit clearing did not terminate")

    # Phase B: Dhar burning loop.
    for _ in range(MAX_ROUNDS):
        result.potentials.append(_potential(G, cur, dist_fn, v0))
        report = burn(G, cur, v0)
        if report.is_reduced:
            break
        ref = report.refinement
        W = report.model
        unburnt = report.unburnt
        # fire the unburnt cut for time eps = shortest boundary edge
        eps = min(
            e.length
            for e in W.edges
            if (e.u in unburnt) != (e.v in unburnt)
        )
        data = {}
        for e in W.edges:
            fu = ZERO if e.u in unburnt else -eps
            fv = ZERO if e.v in unburnt else -eps
            row = [(ZERO, fu)]
            if fu != fv:
                # slope -1 leaving the cut, then flat at -eps
                if fu == ZERO:
                    if eps < e.length:
                        row.append((eps, -eps))
                else:
                    if eps < e.length:
                        row.append((e.length - eps, -eps))
            row.append((e.length, fv))
            data[e.id] = row
        f_step = pull_to_base(ref, PLFunction(W, data, validate=False))
        cur = cur + principal_divisor(G, f_step)
        f_total = f_total + f_step
        result.dhar_rounds += 1
    else:
        raise InternalInvariantError("Dhar firing loop did not terminate")

    if D + principal_divisor(G, f_total) != cur:
        raise InternalInvariantError("witness function does not certify the reduction")
    for p, c in cur.items():
        if p != v0 and c < 0:
            raise InternalInvariantError("reduced divisor not effective away from base point")
    result.divisor = cur
    result.function = f_total
    return result


reduce = reduce_divisor


def lin_equiv(G: MetricGraph, A: Divisor, B: Divisor) -> Optional[PLFunction]:
    """Return f with A = B + div(f) if A ~ B, else None."""
    if A.degree != B.degree:
        return None
    v0 = G.vertex_point(G.vertices[0])
    ra = reduce_divisor(G, A, v0)
    rb = reduce_divisor(G, B, v0)
    if ra.divisor != rb.divisor:
        return None
    return rb.function - ra.function


# -- brute-force oracle -------------------------------------------------


def oracle_budget() -> int:
    raw = os.environ.get(ORACLE_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_ORACLE_BUDGET


class _UnitGraph:
    """Unit subdivision of a metric graph scaled by M = lcm of denominators.

    Nodes are vertex ids and (edge_id, i) grid positions; every segment
    has length 1/M.  Self-loop segments (a length-1/M loop) are ignored
    for chip transport, which is sound because they never move chips.
    """

    def __init__(self, G: MetricGraph, extra_points=(), budget: Optional[int] = None):
        dens = [e.length.denominator for e in G.edges]
        for p in extra_points:
            if not p.is_vertex:
                dens.append(p.offset.denominator)
        self.M = math.lcm(*dens) if dens else 1
        total = sum(int(e.length * self.M) for e in G.edges) + len(G.vertices)
        limit = budget if budget is not None else oracle_budget()
        if total > limit:
            raise OracleInfeasibleError(
                f"unit subdivision needs {total} nodes, budget is {limit}"
            )
        self.G = G
        self.adj = {v: [] for v in G.vertices}

        def add(a, b):
            if a == b:
                return
            self.adj.setdefault(a, []).append(b)
            self.adj.setdefault(b, []).append(a)

        for e in G.edges:
            n = int(e.length * self.M)
            prev = e.u
            for i in range(1, n):
                node = (e.id, i)
                add(prev, node)
                prev = node
            add(prev, e.v)

    def node_of(self, p: Point):
        if p.is_vertex:
            return p.vertex
        i = p.offset * self.M
        if i.denominator != 1:
            raise InternalInvariantError(f"point {p} off the unit grid")
        return (p.edge, int(i))

    def point_of(self, node) -> Point:
        if isinstance(node, str):
            return self.G.vertex_point(node)
        eid, i = node
        return self.G.edge_point(eid, Fraction(i, self.M))


def oracle_reduce(G: MetricGraph, D: Divisor, v0: Point, budget: Optional[int] = None) -> Divisor:
    """Independent reduced-divisor computation by integer chip-firing.

    Subdivides the graph into unit segments, runs a discrete
    deficit-clearing pass followed by Dhar's algorithm with k-fold set
    firings, and maps the stabilized chip configuration back to points
    of G.  Shares no code path with `reduce_divisor`.
    """
    G.require_point(v0)
    U = _UnitGraph(G, [v0] + D.support(), budget=budget)
    chips = {}
    for p, c in D.items():
        n = U.node_of(p)
        chips[n] = chips.get(n, 0) + c
    src = U.node_of(v0)

    # BFS hop distances from v0 (all segments have equal length)
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for a in frontier:
            for b in U.adj[a]:
                if b not in dist:
                    dist[b] = dist[a] + 1
                    nxt.append(b)
        frontier = nxt

    def fire_set(nodes, k=1):
        nodes = set(nodes)
        for a in nodes:
            for b in U.adj[a]:
                if b not in nodes:
                    chips[a] = chips.get(a, 0) - k
                    chips[b] = chips.get(b, 0) + k

    # Phase 1: clear deficits away from v0, farthest first.
    for _ in range(MAX_ROUNDS):
        deficits = [n for n, c in chips.items() if c < 0 and n != src]
        if not deficits:
            break
        q = max(deficits, key=lambda n: (dist[n], str(n)))
        m = -chips[q]
        ball = {n for n, d in dist.items() if d < dist[q]}
        for _ in range(m):
            fire_set(ball)
    else:
        raise InternalInvariantError("oracle deficit clearing did not terminate")

    # Phase 2: discrete Dhar with k-fold firings.
    for _ in range(MAX_ROUNDS):
        burnt = {src}
        changed = True
        while changed:
            changed = False
            for a in U.adj:
                if a in burnt:
                    continue
                c = sum(1 for b in U.adj[a] if b in burnt)
                if c > chips.get(a, 0):
                    burnt.add(a)
                    changed = True
        unburnt = set(U.adj) - burnt
        if not unburnt:
            break
        k = None
        for a in unburnt:
            out = sum(1 for b in U.adj[a] if b not in unburnt)
            if out:
                kk = chips.get(a, 0) // out
                k = kk if k is None else min(k, kk)
        if k is None or k < 1:
            raise InternalInvariantError("oracle Dhar produced a non-fireable cut")
        fire_set(unburnt, k)
    else:
        raise InternalInvariantError("oracle Dhar loop did not terminate")

    return Divisor({U.point_of(n): c for n, c in chips.items() if c})
