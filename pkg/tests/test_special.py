import random
from fractions import Fraction

import pytest

from tropcurve import (
    Divisor,
    MetricGraph,
    UnsupportedError,
    canonical_classification,
    canonical_divisor,
    d_weierstrass_locus,
    descent_weierstrass,
    is_very_ample,
    rank,
    red,
    weierstrass_locus,
    weierstrass_test,
)
from tropcurve import curves


def test_weierstrass_theta():
    G = curves.theta()  # lengths 1, 2, 3
    locus = weierstrass_locus(G)
    # the Weierstrass points of the theta graph are the edge midpoints
    assert locus.vertices == []
    for eid, L in (("e1", 1), ("e2", 2), ("e3", 3)):
        mid = Fraction(L, 2)
        assert locus.intervals[eid] == [(mid, mid)]
    assert weierstrass_test(G, G.edge_point("e1", Fraction(1, 2)))
    assert not weierstrass_test(G, G.vertex_point("P"))


def test_weierstrass_banana_intervals():
    G = curves.banana(3, ["1", "1", "1", "1"])
    locus = weierstrass_locus(G)
    for e in G.edges:
        ivs = locus.intervals[e.id]
        assert ivs, e.id
        assert any(b > a for a, b in ivs), "expected an interval of positive length"


def test_weierstrass_existence_corpus():
    for name, G in curves.corpus().items():
        if G.genus() < 2:
            continue
        locus = weierstrass_locus(G)
        assert not locus.is_empty(), name
        p = descent_weierstrass(G)
        assert locus.contains(p), (name, str(p))


def test_d_weierstrass():
    G = curves.theta()
    P = G.vertex_point("P")
    D = Divisor.of((2, P))
    locus = d_weierstrass_locus(G, D)
    # r(2P) = 0 on theta, so the locus is {Q : red(D,Q)(Q) >= 1}
    assert locus.contains(P)
    with pytest.raises(UnsupportedError):
        d_weierstrass_locus(G, Divisor.of((-1, P)))


def test_very_ample_high_degree():
    for name, G in curves.corpus().items():
        g = G.genus()
        pts = [G.vertex_point(v) for v in G.vertices]
        D = Divisor.of((2 * g + 1, pts[0]))
        va, w = is_very_ample(G, D)
        assert va and w is None, name


def test_very_ample_banana_witness():
    for g in (2, 3):
        G = curves.banana(g)
        P = G.vertex_point("P")
        Q = G.vertex_point("Q")
        D = Divisor.of((g, P), (g, Q))
        va, w = is_very_ample(G, D)
        assert not va
        assert set(w) == {P, Q}
        assert red(G, D, P) == D and red(G, D, Q) == D


def test_very_ample_degree_2g_non_banana():
    # degree 2g on a non-banana curve is very ample
    G = curves.cII(3)
    P = G.vertex_point("P")
    va, w = is_very_ample(G, Divisor.of((6, P)))
    assert va and w is None


def test_very_ample_circle_degree_one():
    G = curves.circle()
    v = G.vertex_point("v")
    va, w = is_very_ample(G, Divisor.of((1, v)))
    # a single chip at v stays reduced for every base point, so Red is
    # constant and (v) is not very ample
    assert not va
    P, Q = w
    assert P != Q
    assert red(G, Divisor.of((1, v)), P) == red(G, Divisor.of((1, v)), Q)


def test_canonical_families():
    expected = {
        "theta": "C.I",
        "banana3": "C.I",
        "cII": "C.II",
        "cIII": "C.III",
    }
    corpus = curves.corpus()
    for name, verdict in expected.items():
        res = canonical_classification(corpus[name])
        assert res.verdict == verdict, name
        P, Q = res.witness
        G = corpus[name]
        g = G.genus()
        want = Divisor.of((g - 1, P), (g - 1, Q))
        K = canonical_divisor(G)
        assert red(G, K, P) == want and red(G, K, Q) == want
        assert rank(G, Divisor.of((1, P), (1, Q))).rank == 1


def test_canonical_cIIprime_and_degenerates():
    assert canonical_classification(curves.cIIprime(3)).verdict == "C.II'"
    assert canonical_classification(curves.figure_eight()).verdict == "C.II"
    assert canonical_classification(curves.dumbbell()).verdict == "C.III"


def test_canonical_perturbation_flips():
    # C.II with the length equality broken by 1/7 becomes very ample
    G = MetricGraph(
        ["P", "Q", "R"],
        [
            ("e1", "P", "Q", "1"),
            ("e2", "P", "Q", "2"),
            ("pr", "P", "R", "1"),
            ("rq", "R", "Q", "8/7"),
            ("loop", "R", "R", "1"),
        ],
    )
    assert canonical_classification(G).verdict == "VeryAmple"
    # same for C.II'
    H = MetricGraph(
        ["P", "Q", "R", "S"],
        [
            ("e1", "P", "Q", "1"),
            ("e2", "P", "Q", "2"),
            ("pr", "P", "R", "1"),
            ("rs1", "R", "S", "1"),
            ("rs2", "R", "S", "2"),
            ("sq", "S", "Q", "8/7"),
        ],
    )
    assert canonical_classification(H).verdict == "VeryAmple"


def test_canonical_generic_very_ample():
    # two lollipops: all vertices are cut vertices or loop-bearing, so
    # the canonical divisor is very ample for every length assignment
    G = MetricGraph(
        ["P", "Q", "R", "S"],
        [
            ("e1", "P", "Q", "1"),
            ("e2", "P", "Q", "2"),
            ("pr", "P", "R", "1"),
            ("qs", "Q", "S", "2"),
            ("loopr", "R", "R", "3"),
            ("loops", "S", "S", "4"),
        ],
    )
    assert canonical_classification(G).verdict == "VeryAmple"
