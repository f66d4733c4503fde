"""Shared test helpers: random graphs, divisors, and PL functions.

Randomness is always driven by an explicit random.Random instance so
every test is deterministic.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from tropcurve import (
    Divisor,
    MetricGraph,
    PLFunction,
    distance_function,
)
from tropcurve import curves


def rand_length(rnd: random.Random) -> Fraction:
    return Fraction(rnd.randint(1, 8), rnd.randint(1, 4))


def random_graph(rnd: random.Random, max_vertices: int = 5) -> MetricGraph:
    """A random connected multigraph (loops and parallel edges allowed)."""
    n = rnd.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = rnd.randrange(i)
        edges.append((f"t{i}", vs[j], vs[i], rand_length(rnd)))
    for k in range(rnd.randint(1 if n == 1 else 0, 3)):
        u = rnd.choice(vs)
        v = rnd.choice(vs)
        edges.append((f"x{k}", u, v, rand_length(rnd)))
    if not edges:  # single isolated vertex: give it a loop
        edges.append(("x0", vs[0], vs[0], rand_length(rnd)))
    return MetricGraph(vs, edges)


def random_point(G: MetricGraph, rnd: random.Random):
    if rnd.random() < 0.4:
        return G.vertex_point(rnd.choice(G.vertices))
    e = rnd.choice(G.edges)
    return G.edge_point(e.id, e.length * Fraction(rnd.randint(0, 4), 4))


def random_divisor(G: MetricGraph, rnd: random.Random, terms: int = 4,
                   max_coeff: int = 3) -> Divisor:
    parts = []
    for _ in range(rnd.randint(1, terms)):
        c = rnd.randint(-max_coeff, max_coeff)
        if c:
            parts.append((c, random_point(G, rnd)))
    return Divisor.of(*parts)


def random_divisor_of_degree(G: MetricGraph, rnd: random.Random, degree: int) -> Divisor:
    D = Divisor.zero()
    deg = 0
    while deg != degree:
        step = rnd.choice([1, 1, 2, -1]) if deg < degree else -1
        if deg < degree:
            step = min(step, degree - deg)
        D = D + Divisor.of((step, random_point(G, rnd)))
        deg += step
    return D


def random_pl_function(G: MetricGraph, rnd: random.Random) -> PLFunction:
    """A random rational function: an integer combination of clamped
    distance functions min(dist(p, .), r)."""
    f = PLFunction.zero(G)
    for _ in range(rnd.randint(1, 3)):
        p = random_point(G, rnd)
        d = distance_function(G, p)
        r = d.max_value() * Fraction(rnd.randint(1, 4), 4)
        clamp = d.scale(-1).tropical_add(PLFunction.constant(G, -r)).scale(-1)
        f = f + clamp.scale(rnd.randint(-2, 2))
    return f


@pytest.fixture(scope="session")
def corpus():
    return curves.corpus()
