#!/usr/bin/env python3
"""Classify the canonical divisor of every named family, then show that
perturbing the C.II length equality makes it very ample.

Usage: python3 scripts/demo_canonical.py
"""

from tropcurve import MetricGraph, canonical_classification, weierstrass_locus
from tropcurve import curves


def show(name, G):
    res = canonical_classification(G)
    w = ""
    if res.witness:
        P, Q = res.witness
        w = f"  witness ({P}, {Q})"
    print(f"{name:18s} genus {G.genus()}  ->  {res.verdict}{w}")


def main():
    for name in ("theta", "banana3", "cII", "cIIprime", "cIII", "figure_eight", "dumbbell"):
        show(name, curves.NAMED[name]())
    perturbed = MetricGraph(
        ["P", "Q", "R"],
        [
            ("e1", "P", "Q", "1"),
            ("e2", "P", "Q", "2"),
            ("pr", "P", "R", "1"),
            ("rq", "R", "Q", "8/7"),
            ("loop", "R", "R", "1"),
        ],
    )
    show("cII (arm 8/7)", perturbed)
    print()
    G = curves.theta()
    print("Weierstrass locus of the theta graph:", weierstrass_locus(G).to_json())


if __name__ == "__main__":
    main()
