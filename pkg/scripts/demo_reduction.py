#!/usr/bin/env python3
"""Reduce random divisors and cross-check against the independent
unit-subdivision oracle.

Usage: python3 scripts/demo_reduction.py [--seed N] [--count N]
"""

import argparse
import random
from fractions import Fraction

from tropcurve import (
    Divisor,
    MetricGraph,
    oracle_reduce,
    principal_divisor,
    reduce_divisor,
)


def random_graph(rnd):
    n = rnd.randint(1, 5)
    vs = [f"v{i}" for i in range(n)]
    edges = [
        (f"t{i}", vs[rnd.randrange(i)], vs[i], Fraction(rnd.randint(1, 8), rnd.randint(1, 4)))
        for i in range(1, n)
    ]
    for k in range(rnd.randint(1, 3)):
        edges.append(
            (f"x{k}", rnd.choice(vs), rnd.choice(vs), Fraction(rnd.randint(1, 8), rnd.randint(1, 4)))
        )
    return MetricGraph(vs, edges)


def random_point(G, rnd):
    if rnd.random() < 0.4:
        return G.vertex_point(rnd.choice(G.vertices))
    e = rnd.choice(G.edges)
    return G.edge_point(e.id, e.length * Fraction(rnd.randint(0, 4), 4))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=20)
    args = ap.parse_args()
    rnd = random.Random(args.seed)
    for i in range(args.count):
        G = random_graph(rnd)
        D = Divisor.of(
            *((rnd.randint(-3, 3), random_point(G, rnd)) for _ in range(rnd.randint(1, 4)))
        )
        P = random_point(G, rnd)
        res = reduce_divisor(G, D, P)
        oracle = oracle_reduce(G, D, P)
        ok = res.divisor == oracle
        witness_ok = D + principal_divisor(G, res.function) == res.divisor
        print(f"[{i:3d}] |V|={len(G.vertices)} |E|={len(G.edges)} g={G.genus()}  "
              f"D={D}  base={P}")
        print(f"      reduced={res.divisor}  oracle_agrees={ok} witness={witness_ok}")
        if not (ok and witness_ok):
            raise SystemExit("disagreement found")
    print(f"all {args.count} instances agree")


if __name__ == "__main__":
    main()
