"""Compact metric graphs with exact rational edge lengths.

A `MetricGraph` is a finite connected weighted multigraph (loops and
parallel edges allowed) standing for its geometric realization.  Points
of the realization are `Point` values: either a vertex or an
edge-interior location at a rational offset from the edge's first
endpoint.  All instances are immutable after construction and safe to
share.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import InvalidInputError
from .rational import format_rational, parse_rational

ZERO = Fraction(0)


@dataclass(frozen=True)
class Point:
    """A point of the realization: a vertex, or edge interior at an offset.

    Canonical form: offsets 0 and full length are always stored as the
    corresponding vertex.  Construct through `MetricGraph.vertex_point`
    or `MetricGraph.edge_point`, which canonicalize.
    """

    vertex: Optional[str] = None
    edge: Optional[str] = None
    offset: Optional[Fraction] = None

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def sort_key(self):
        if self.is_vertex:
            return (0, self.vertex, ZERO)
        return (1, self.edge, self.offset)

    def __str__(self) -> str:
        if self.is_vertex:
            return self.vertex
        return f"{self.edge}@{format_rational(self.offset)}"


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


class MetricGraph:
    """Connected weighted multigraph; the model of a compact tropical curve."""

    def __init__(self, vertices: Iterable[str], edges: Iterable):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInputError("duplicate vertex ids")
        vset = set(self.vertices)
        self.edges = []
        seen = set()
        for spec in edges:
            if isinstance(spec, Edge):
                e = Edge(spec.id, spec.u, spec.v, parse_rational(spec.length))
            else:
                eid, u, v, length = spec
                e = Edge(str(eid), str(u), str(v), parse_rational(length))
            if e.id in seen:
                raise InvalidInputError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            if e.u not in vset or e.v not in vset:
                raise InvalidInputError(f"edge {e.id!r} has unknown endpoint")
            if e.length <= 0:
                raise InvalidInputError(f"edge {e.id!r} has nonpositive length")
            self.edges.append(e)
        self._edge_by_id = {e.id: e for e in self.edges}
        # adjacency: vertex -> list of (edge, end) where end is 0 or 1;
        # a loop contributes both ends, i.e. two germs.
        self._germs = {v: [] for v in self.vertices}
        for e in self.edges:
            self._germs[e.u].append((e, 0))
            self._germs[e.v].append((e, 1))
        if not self._connected():
            raise InvalidInputError("graph is not connected")

    # -- basic structure ------------------------------------------------

    def _connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for e, end in self._germs[v]:
                w = e.v if end == 0 else e.u
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def edge(self, eid: str) -> Edge:
        try:
            return self._edge_by_id[eid]
        except KeyError:
            raise InvalidInputError(f"unknown edge id {eid!r}") from None

    def germs(self, vertex: str):
        """Incident (edge, end) pairs at a vertex; loops appear twice."""
        try:
            return list(self._germs[vertex])
        except KeyError:
            raise InvalidInputError(f"unknown vertex id {vertex!r}") from None

    # -- points ---------------------------------------------------------

    def vertex_point(self, v: str) -> Point:
        if v not in self._germs:
            raise InvalidInputError(f"unknown vertex id {v!r}")
        return Point(vertex=v)

    def edge_point(self, eid: str, offset) -> Point:
        e = self.edge(eid)
        off = parse_rational(offset)
        if off < 0 or off > e.length:
            raise InvalidInputError(
                f"offset {format_rational(off)} outside edge {eid!r} "
                f"of length {format_rational(e.length)}"
            )
        if off == 0:
            return Point(vertex=e.u)
        if off == e.length:
            return Point(vertex=e.v)
        return Point(edge=eid, offset=off)

    def parse_point(self, text: str) -> Point:
        text = text.strip()
        if "@" in text:
            eid, off = text.split("@", 1)
            return self.edge_point(eid.strip(), parse_rational(off))
        return self.vertex_point(text)

    def contains_point(self, p: Point) -> bool:
        if p.is_vertex:
            return p.vertex in self._germs
        return p.edge in self._edge_by_id and 0 < p.offset < self.edge(p.edge).length

    def require_point(self, p: Point) -> Point:
        if not self.contains_point(p):
            raise InvalidInputError(f"point {p} does not lie on this graph")
        return p

    # -- invariants -----------------------------------------------------

    def degree(self, p: Point) -> int:
        if p.is_vertex:
            return len(self.germs(p.vertex))
        self.require_point(p)
        return 2

    def genus(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    # -- metric ---------------------------------------------------------

    def vertex_distances(self, source: str) -> dict:
        """Exact shortest-path distance from a vertex to every vertex."""
        dist = {source: ZERO}
        heap = [(ZERO, source)]
        done = set()
        while heap:
            d, v = heapq.heappop(heap)
            if v in done:
                continue
            done.add(v)
            for e, end in self._germs[v]:
                w = e.v if end == 0 else e.u
                nd = d + e.length
                if w not in dist or nd < dist[w]:
                    dist[w] = nd
                    heapq.heappush(heap, (nd, w))
        return dist

    def distance(self, p: Point, q: Point) -> Fraction:
        self.require_point(p)
        self.require_point(q)
        if p == q:
            return ZERO
        ref = self.refine([p, q])
        pw = ref.to_refined(p)
        qw = ref.to_refined(q)
        return ref.graph.vertex_distances(pw.vertex)[qw.vertex]

    # -- models ---------------------------------------------------------

    def refine(self, points: Iterable[Point] = (), *, loopless: bool = False) -> "Refinement":
        return Refinement(self, points, loopless=loopless)

    def loopless_model(self) -> "Refinement":
        return Refinement(self, (), loopless=True)

    def __repr__(self):
        return f"MetricGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, g={self.genus()})"


class Refinement:
    """A model of the same metric graph with extra vertices at given points.

    Every loop is additionally split at its midpoint when `loopless` is
    set, so the refined model has no loops.  Sub-edges keep the parent's
    orientation; new vertices are named after their canonical point.
    """

    def __init__(self, base: MetricGraph, points: Iterable[Point] = (), *, loopless: bool = False):
        self.base = base
        cuts = {e.id: set() for e in base.edges}
        for p in points:
            base.require_point(p)
            if not p.is_vertex:
                cuts[p.edge].add(p.offset)
        if loopless:
            for e in base.edges:
                if e.is_loop and not cuts[e.id]:
                    cuts[e.id].add(e.length / 2)
        self.cuts = {eid: sorted(s) for eid, s in cuts.items()}

        vertices = list(base.vertices)
        edges = []
        # segment map: new edge id -> (old edge id, start offset)
        self._seg = {}
        self._pieces = {}  # old edge id -> list of (start, end, new edge id)
        for e in base.edges:
            offs = [ZERO] + self.cuts[e.id] + [e.length]
            names = [e.u] + [
                f"{e.id}@{format_rational(o)}" for o in self.cuts[e.id]
            ] + [e.v]
            for name in names[1:-1]:
                vertices.append(name)
            pieces = []
            for i in range(len(offs) - 1):
                nid = e.id if len(offs) == 2 else f"{e.id}#{i}"
                edges.append((nid, names[i], names[i + 1], offs[i + 1] - offs[i]))
                self._seg[nid] = (e.id, offs[i])
                pieces.append((offs[i], offs[i + 1], nid))
            self._pieces[e.id] = pieces
        self.graph = MetricGraph(vertices, edges)
        self._interior_names = {
            f"{eid}@{format_rational(o)}": (eid, o)
            for eid, offs in self.cuts.items()
            for o in offs
        }

    def to_refined(self, p: Point) -> Point:
        """Image of a base-graph point in the refined model (canonical)."""
        if p.is_vertex:
            return self.graph.vertex_point(p.vertex)
        for start, end, nid in self._pieces[p.edge]:
            if start <= p.offset <= end:
                return self.graph.edge_point(nid, p.offset - start)
        raise InvalidInputError(f"point {p} not on base graph")

    def to_base(self, p: Point) -> Point:
        """Image of a refined-model point back in the base graph (canonical)."""
        if p.is_vertex:
            if p.vertex in self._interior_names:
                eid, off = self._interior_names[p.vertex]
                return self.base.edge_point(eid, off)
            return self.base.vertex_point(p.vertex)
        eid, start = self._seg[p.edge]
        return self.base.edge_point(eid, start + p.offset)

    def pieces_of(self, base_edge_id: str):
        """Ordered (start, end, refined edge id) covering a base edge."""
        return list(self._pieces[base_edge_id])
