"""Divisors and continuous piecewise-linear functions with integer slopes.

`Divisor` is a finite integer combination of points.  `PLFunction` is a
continuous piecewise-linear function on the realization of a fixed
model, stored as per-edge breakpoint lists; slopes between breakpoints
are integers.  Both are immutable values.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError, InternalInvariantError
from .graph import MetricGraph, Point, Refinement, ZERO
from .rational import format_rational, parse_rational


class Divisor:
    """Finite formal sum of points with nonzero integer coefficients."""

    __slots__ = ("_coeffs", "_key")

    def __init__(self, coeffs=None):
        d = {}
        for p, c in dict(coeffs or {}).items():
            c = int(c)
            if c != 0:
                d[p] = c
        self._coeffs = d
        self._key = tuple(sorted(((p.sort_key(), c) for p, c in d.items())))

    @classmethod
    def zero(cls) -> "Divisor":
        return cls({})

    @classmethod
    def of(cls, *terms) -> "Divisor":
        """Build from (coefficient, point) pairs."""
        d = {}
        for c, p in terms:
            d[p] = d.get(p, 0) + int(c)
        return cls(d)

    def __getitem__(self, p: Point) -> int:
        return self._coeffs.get(p, 0)

    def support(self):
        return sorted(self._coeffs, key=Point.sort_key)

    def items(self):
        return [(p, self._coeffs[p]) for p in self.support()]

    @property
    def degree(self) -> int:
        return sum(self._coeffs.values())

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._coeffs.values())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "Divisor") -> "Divisor":
        d = dict(self._coeffs)
        for p, c in other._coeffs.items():
            d[p] = d.get(p, 0) + c
        return Divisor(d)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -c for p, c in self._coeffs.items()})

    def __mul__(self, n: int) -> "Divisor":
        return Divisor({p: n * c for p, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for p, c in self.items():
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{abs(c)}*({p})"))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __repr__(self):
        return f"Divisor({self})"


def canonical_divisor(G: MetricGraph) -> Divisor:
    """K = sum over vertices of (degree - 2)(v); degree 2g - 2."""
    return Divisor({G.vertex_point(v): len(G.germs(v)) - 2 for v in G.vertices})


def parse_divisor(text: str, G: MetricGraph) -> Divisor:
    """Parse `2*(P) + 1*(e1@1/3) - 1*(Q)`; the keyword `K` expands to the
    canonical divisor and may be combined additively with other terms."""
    s = text.replace(" ", "")
    if not s:
        raise InvalidInputError("empty divisor spec")
    # split into signed terms
    terms = []
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    buf = ""
    depth = 0
    for ch in s[i:]:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0:
            terms.append((sign, buf))
            sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
    terms.append((sign, buf))

    total = Divisor.zero()
    for sign, term in terms:
        if not term:
            raise InvalidInputError(f"malformed divisor spec {text!r}")
        if term == "K":
            total = total + sign * canonical_divisor(G)
            continue
        if "*" in term:
            coeff_s, pt_s = term.split("*", 1)
            try:
                coeff = int(coeff_s)
            except ValueError:
                raise InvalidInputError(f"bad coefficient in {term!r}") from None
        else:
            coeff = 1
            pt_s = term
        if not (pt_s.startswith("(") and pt_s.endswith(")")):
            raise InvalidInputError(f"expected parenthesized point in {term!r}")
        p = G.parse_point(pt_s[1:-1])
        total = total + Divisor.of((sign * coeff, p))
    return total


class PLFunction:
    """Continuous piecewise-linear function with integer slopes.

    Stored per edge as a strictly increasing breakpoint list
    [(offset, value), ...] from offset 0 to the edge length; endpoint
    values agree with the shared vertex values, and collinear interior
    breakpoints are merged on construction.
    """

    __slots__ = ("graph", "data", "_key")

    def __init__(self, graph: MetricGraph, data, *, validate: bool = True):
        self.graph = graph
        norm = {}
        vertex_vals = {}
        for e in graph.edges:
            bps = [(Fraction(o), Fraction(v)) for o, v in data[e.id]]
            if bps[0][0] != 0 or bps[-1][0] != e.length:
                raise InvalidInputError(f"breakpoints of edge {e.id!r} must span [0, length]")
            merged = [bps[0]]
            for o, v in bps[1:]:
                if o < merged[-1][0]:
                    raise InvalidInputError(f"breakpoints of edge {e.id!r} not increasing")
                if o == merged[-1][0]:
                    if v != merged[-1][1]:
                        raise InvalidInputError(f"conflicting values at {e.id}@{o}")
                    continue
                if len(merged) >= 2:
                    (o0, v0), (o1, v1) = merged[-2], merged[-1]
                    if (v1 - v0) * (o - o1) == (v - v1) * (o1 - o0):
                        merged.pop()
                merged.append((o, v))
            norm[e.id] = tuple(merged)
            for vid, val in ((e.u, merged[0][1]), (e.v, merged[-1][1])):
                if vertex_vals.setdefault(vid, val) != val:
                    raise InvalidInputError(f"discontinuity at vertex {vid!r}")
        if validate:
            for eid, bps in norm.items():
                for (o0, v0), (o1, v1) in zip(bps, bps[1:]):
                    slope = (v1 - v0) / (o1 - o0)
                    if slope.denominator != 1:
                        raise InvalidInputError(
                            f"non-integer slope {format_rational(slope)} on edge {eid!r}"
                        )
        self.data = norm
        self._key = tuple(sorted(norm.items()))

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, graph: MetricGraph, c) -> "PLFunction":
        c = parse_rational(c)
        return cls(graph, {e.id: [(ZERO, c), (e.length, c)] for e in graph.edges})

    @classmethod
    def zero(cls, graph: MetricGraph) -> "PLFunction":
        return cls.constant(graph, 0)

    @classmethod
    def from_vertex_values(cls, graph: MetricGraph, values) -> "PLFunction":
        """Linear interpolation along each edge between vertex values."""
        return cls(
            graph,
            {e.id: [(ZERO, values[e.u]), (e.length, values[e.v])] for e in graph.edges},
        )

    # -- evaluation -----------------------------------------------------

    def vertex_value(self, v: str) -> Fraction:
        for e, end in self.graph.germs(v):
            bps = self.data[e.id]
            return bps[0][1] if end == 0 else bps[-1][1]
        raise InvalidInputError(f"unknown vertex {v!r}")

    def evaluate(self, p: Point) -> Fraction:
        if p.is_vertex:
            return self.vertex_value(p.vertex)
        bps = self.data[p.edge]
        for (o0, v0), (o1, v1) in zip(bps, bps[1:]):
            if o0 <= p.offset <= o1:
                return v0 + (v1 - v0) * (p.offset - o0) / (o1 - o0)
        raise InvalidInputError(f"point {p} outside edge")

    __call__ = evaluate

    def edge_slopes(self, eid: str):
        """List of (start, end, integer slope) pieces along an edge."""
        bps = self.data[eid]
        return [
            (o0, o1, int((v1 - v0) / (o1 - o0)))
            for (o0, v0), (o1, v1) in zip(bps, bps[1:])
        ]

    # -- algebra --------------------------------------------------------

    def _zip(self, other: "PLFunction", op) -> "PLFunction":
        if other.graph is not self.graph and other.graph.vertices != self.graph.vertices:
            raise InvalidInputError("functions live on different graphs")
        data = {}
        for e in self.graph.edges:
            offs = sorted({o for o, _ in self.data[e.id]} | {o for o, _ in other.data[e.id]})
            row = []
            for o in offs:
                if o == 0:
                    a, b = self.data[e.id][0][1], other.data[e.id][0][1]
                elif o == e.length:
                    a, b = self.data[e.id][-1][1], other.data[e.id][-1][1]
                else:
                    p = self.graph.edge_point(e.id, o)
                    a, b = self.evaluate(p), other.evaluate(p)
                row.append((o, op(a, b)))
            data[e.id] = row
        return PLFunction(self.graph, data, validate=False)

    def __add__(self, other: "PLFunction") -> "PLFunction":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "PLFunction":
        return self.scale(-1)

    def scale(self, n: int) -> "PLFunction":
        """Multiply values (hence slopes) by an integer."""
        n = int(n)
        return PLFunction(
            self.graph,
            {eid: [(o, n * v) for o, v in bps] for eid, bps in self.data.items()},
            validate=False,
        )

    def shift(self, c) -> "PLFunction":
        """Tropical scalar multiplication: add the constant c everywhere."""
        c = parse_rational(c)
        return PLFunction(
            self.graph,
            {eid: [(o, v + c) for o, v in bps] for eid, bps in self.data.items()},
            validate=False,
        )

    def tropical_add(self, other: "PLFunction") -> "PLFunction":
        """Pointwise maximum, with exact breakpoints at crossings."""
        if other.graph is not self.graph and other.graph.vertices != self.graph.vertices:
            raise InvalidInputError("functions live on different graphs")
        diff = self._zip(other, lambda a, b: a - b)
        data = {}
        for e in self.graph.edges:
            offs = {o for o, _ in diff.data[e.id]}
            # crossing points where the difference changes sign
            for (o0, v0), (o1, v1) in zip(diff.data[e.id], diff.data[e.id][1:]):
                if (v0 > 0 > v1) or (v0 < 0 < v1):
                    offs.add(o0 + (o1 - o0) * (-v0) / (v1 - v0))
            row = []
            for o in sorted(offs):
                if o == 0:
                    a, b = self.data[e.id][0][1], other.data[e.id][0][1]
                elif o == e.length:
                    a, b = self.data[e.id][-1][1], other.data[e.id][-1][1]
                else:
                    p = self.graph.edge_point(e.id, o)
                    a, b = self.evaluate(p), other.evaluate(p)
                row.append((o, max(a, b)))
            data[e.id] = row
        return PLFunction(self.graph, data, validate=False)

    def dominates(self, other: "PLFunction") -> bool:
        """True iff self >= other everywhere (exact)."""
        d = self._zip(other, lambda a, b: a - b)
        return all(v >= 0 for bps in d.data.values() for _, v in bps)

    def max_value(self) -> Fraction:
        return max(v for bps in self.data.values() for _, v in bps)

    def min_value(self) -> Fraction:
        return min(v for bps in self.data.values() for _, v in bps)

    def argmax_points(self):
        """Breakpoints (as canonical points) where the maximum is attained."""
        m = self.max_value()
        out = []
        for eid, bps in self.data.items():
            for o, v in bps:
                if v == m:
                    out.append(self.graph.edge_point(eid, o))
        seen, uniq = set(), []
        for p in out:
            if p not in seen:
                seen.add(p)
                uniq.append(p)
        return sorted(uniq, key=Point.sort_key)

    def __eq__(self, other):
        return isinstance(other, PLFunction) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"PLFunction({dict(self.data)})"

    def to_json(self):
        return {
            eid: [[format_rational(o), format_rational(v)] for o, v in bps]
            for eid, bps in self.data.items()
        }


def principal_divisor(G: MetricGraph, f: PLFunction) -> Divisor:
    """div(f): at each point, the sum of outgoing integer slopes of f."""
    coeffs = {}

    def bump(p: Point, c: int):
        if c:
            coeffs[p] = coeffs.get(p, 0) + c

    for e in G.edges:
        pieces = f.edge_slopes(e.id)
        bump(G.vertex_point(e.u), pieces[0][2])
        bump(G.vertex_point(e.v), -pieces[-1][2])
        for (a0, a1, s0), (b0, b1, s1) in zip(pieces, pieces[1:]):
            bump(G.edge_point(e.id, a1), s1 - s0)
    D = Divisor(coeffs)
    if D.degree != 0:
        raise InternalInvariantError("principal divisor has nonzero degree")
    return D


def in_RD(G: MetricGraph, D: Divisor, f: PLFunction) -> bool:
    """True iff D + div(f) is effective, i.e. f lies in R(D)."""
    return (D + principal_divisor(G, f)).is_effective


# -- transport along refinements ---------------------------------------


def push_to_refined(ref: Refinement, f: PLFunction) -> PLFunction:
    """Restrict a base-graph function to the refined model (same values)."""
    data = {}
    for e in ref.base.edges:
        bps = f.data[e.id]
        for start, end, nid in ref.pieces_of(e.id):
            row = [(ZERO, _eval_bps(bps, start))]
            for o, v in bps:
                if start < o < end:
                    row.append((o - start, v))
            row.append((end - start, _eval_bps(bps, end)))
            data[nid] = row
    return PLFunction(ref.graph, data, validate=False)


def pull_to_base(ref: Refinement, f: PLFunction) -> PLFunction:
    """Reassemble a refined-model function on the base graph."""
    data = {}
    for e in ref.base.edges:
        row = []
        for start, end, nid in ref.pieces_of(e.id):
            for o, v in f.data[nid]:
                row.append((start + o, v))
        data[e.id] = row
    return PLFunction(ref.base, data, validate=False)


def _eval_bps(bps, o):
    for (o0, v0), (o1, v1) in zip(bps, bps[1:]):
        if o0 <= o <= o1:
            return v0 + (v1 - v0) * (o - o0) / (o1 - o0)
    raise InternalInvariantError("offset outside breakpoint span")


def divisor_to_refined(ref: Refinement, D: Divisor) -> Divisor:
    return Divisor({ref.to_refined(p): c for p, c in D.items()})


def divisor_to_base(ref: Refinement, D: Divisor) -> Divisor:
    return Divisor({ref.to_base(p): c for p, c in D.items()})


def distance_function(G: MetricGraph, p: Point) -> PLFunction:
    """The function x -> dist(p, x), as an exact PLFunction on G."""
    ref = G.refine([p])
    W = ref.graph
    src = ref.to_refined(p)
    dist = W.vertex_distances(src.vertex)
    data = {}
    for e in W.edges:
        du, dv = dist[e.u], dist[e.v]
        row = [(ZERO, du)]
        # interior local max where wavefronts from both ends meet
        t = (dv + e.length - du) / 2
        if 0 < t < e.length:
            row.append((t, du + t))
        row.append((e.length, dv))
        data[e.id] = row
    return pull_to_base(ref, PLFunction(W, data, validate=False))
