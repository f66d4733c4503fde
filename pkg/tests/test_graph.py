import random
from fractions import Fraction

import pytest

from tropcurve import InvalidInputError, MetricGraph, parse_rational, format_rational
from tropcurve import curves

from conftest import random_graph


def test_parse_rational():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(2) == Fraction(2)
    assert parse_rational("-1/3") == Fraction(-1, 3)
    assert format_rational(Fraction(7, 4)) == "7/4"
    with pytest.raises(InvalidInputError):
        parse_rational("0.5")
    with pytest.raises(InvalidInputError):
        parse_rational("1/0")


def test_validation():
    with pytest.raises(InvalidInputError):
        MetricGraph(["A"], [("e", "A", "B", "1")])  # unknown endpoint
    with pytest.raises(InvalidInputError):
        MetricGraph(["A", "B"], [("e", "A", "B", "0")])  # nonpositive length
    with pytest.raises(InvalidInputError):
        MetricGraph(["A", "B", "C"], [("e", "A", "B", "1")])  # disconnected
    with pytest.raises(InvalidInputError):
        MetricGraph(["A", "B"], [("e", "A", "B", "1"), ("e", "A", "B", "2")])


def test_genus():
    assert curves.segment().genus() == 0
    assert curves.circle().genus() == 1
    assert curves.theta().genus() == 2
    assert curves.banana(4).genus() == 4
    assert curves.cII(3).genus() == 3
    assert curves.cIIprime(4).genus() == 4
    assert curves.cIII().genus() == 2
    assert curves.figure_eight().genus() == 2


def test_point_canonicalization():
    G = curves.theta()
    e1 = G.edge("e1")
    assert G.edge_point("e1", 0) == G.vertex_point("P")
    assert G.edge_point("e1", e1.length) == G.vertex_point("Q")
    p = G.edge_point("e1", Fraction(1, 3))
    assert str(p) == "e1@1/3"
    assert G.parse_point("e1@1/3") == p
    assert G.parse_point("P") == G.vertex_point("P")
    with pytest.raises(InvalidInputError):
        G.edge_point("e1", Fraction(9, 2))  # out of range
    with pytest.raises(InvalidInputError):
        G.parse_point("nope")


def test_distances():
    G = curves.theta()  # edges of lengths 1, 2, 3
    P, Q = G.vertex_point("P"), G.vertex_point("Q")
    assert G.distance(P, Q) == 1
    # midpoint of the length-3 edge: 3/2 either way around via e1 = 5/2
    m = G.edge_point("e3", Fraction(3, 2))
    assert G.distance(P, m) == Fraction(3, 2)
    assert G.distance(m, Q) == Fraction(3, 2)
    far = G.edge_point("e3", Fraction(2))
    assert G.distance(P, far) == 2  # 3 - 2 = 1 to Q plus 1 via e1 = 2


def test_refinement_roundtrip():
    rnd = random.Random(7)
    for _ in range(20):
        G = random_graph(rnd)
        pts = []
        for e in G.edges:
            pts.append(G.edge_point(e.id, e.length / 3))
        ref = G.refine(pts)
        assert ref.graph.genus() == G.genus()
        for p in pts:
            q = ref.to_refined(p)
            assert q.is_vertex
            assert ref.to_base(q) == p
        # every refined edge maps back consistently
        for e2 in ref.graph.edges:
            mid = ref.graph.edge_point(e2.id, e2.length / 2)
            back = ref.to_base(mid)
            again = ref.to_refined(back)
            assert ref.to_base(again) == back


def test_loopless_model():
    G = curves.figure_eight()
    ref = G.loopless_model()
    assert not any(e.is_loop for e in ref.graph.edges)
    assert ref.graph.genus() == 2
