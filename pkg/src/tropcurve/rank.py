"""Rank of divisors and the Riemann-Roch identity.

The rank is computed by brute-force enumeration over a rank-determining
set: the vertices of a loopless model.  r(D) >= k iff |D - E| is
nonempty for every effective E of degree k supported there, and
nonemptiness of a linear system is one reduction (the reduced divisor
is effective iff the system is nonempty).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional

from .functions import Divisor, canonical_divisor
from .graph import MetricGraph, Point
from .reduction import reduce_divisor


@dataclass
class RankResult:
    """rank >= -1, plus a certificate: an effective divisor E of degree
    rank+1 with |D - E| empty."""

    rank: int
    certificate: Optional[Divisor]


def has_nonneg_rank(G: MetricGraph, D: Divisor) -> bool:
    """True iff |D| is nonempty, i.e. the reduced form of D is effective."""
    if D.degree < 0:
        return False
    v0 = G.vertex_point(G.vertices[0])
    return reduce_divisor(G, D, v0).divisor.is_effective


def rank_determining_points(G: MetricGraph):
    """Vertex points of a loopless model of G (vertices plus loop midpoints)."""
    ref = G.loopless_model()
    return [ref.to_base(ref.graph.vertex_point(v)) for v in ref.graph.vertices]


def rank(G: MetricGraph, D: Divisor) -> RankResult:
    if D.degree < 0 or not has_nonneg_rank(G, D):
        return RankResult(-1, Divisor.zero())
    pts = sorted(rank_determining_points(G), key=Point.sort_key)
    for k in range(1, D.degree + 1):
        for combo in combinations_with_replacement(pts, k):
            E = Divisor.of(*((1, p) for p in combo))
            if not has_nonneg_rank(G, D - E):
                return RankResult(k - 1, E)
    # r(D) can never exceed deg(D): removing deg+1 chips leaves negative degree
    return RankResult(D.degree, Divisor.of((D.degree + 1, pts[0])))


def riemann_roch_check(G: MetricGraph, D: Divisor) -> bool:
    """Exact check of r(D) - r(K-D) = deg(D) + 1 - g."""
    K = canonical_divisor(G)
    lhs = rank(G, D).rank - rank(G, K - D).rank
    return lhs == D.degree + 1 - G.genus()


def is_rank_determining(G: MetricGraph, A) -> bool:
    """Sufficient condition: cutting the curve along the point set A
    yields at least two connected components, each of genus zero (each
    component taken with its closure, repeated cut points counted once
    per component)."""
    A = list(A)
    for p in A:
        G.require_point(p)
    interior = [p for p in A if not p.is_vertex]
    ref = G.refine(interior)
    W = ref.graph
    removed = {ref.to_refined(p).vertex for p in A}
    parent = {v: v for v in W.vertices if v not in removed}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    components = 0
    genera = []
    # edges fully between removed points are their own components
    for e in W.edges:
        ru, rv = e.u in removed, e.v in removed
        if ru and rv:
            components += 1
            genera.append(1 if e.is_loop else 0)
        elif not ru and not rv:
            parent[find(e.u)] = find(e.v)
    # closure genus of each live component: count its vertices, incident
    # cut points (once each) and edges (live-live and live-removed)
    comp_v, comp_cutpts, comp_e = {}, {}, {}
    for v in parent:
        comp_v.setdefault(find(v), set()).add(v)
    for e in W.edges:
        ru, rv = e.u in removed, e.v in removed
        if ru and rv:
            continue
        root = find(e.v if ru else e.u)
        comp_e[root] = comp_e.get(root, 0) + 1
        if ru or rv:
            comp_cutpts.setdefault(root, set()).add(e.u if ru else e.v)
    for root, verts in comp_v.items():
        components += 1
        nv = len(verts) + len(comp_cutpts.get(root, ()))
        ne = comp_e.get(root, 0)
        genera.append(ne - nv + 1)
    return components >= 2 and all(g == 0 for g in genera)
