#!/usr/bin/env python3
"""Trace the reduced-divisor map of the canonical divisor on a named
curve and emit plot data.

Usage: python3 scripts/demo_trace.py [--curve NAME] [--out PATH]
"""

import argparse

from tropcurve import canonical_divisor, emit_plot, trace_all
from tropcurve import curves


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--curve", default="theta", choices=sorted(curves.NAMED))
    ap.add_argument("--out", default="trace.tsv")
    args = ap.parse_args()
    G = curves.NAMED[args.curve]()
    K = canonical_divisor(G)
    print(f"{args.curve}: genus {G.genus()}, K = {K}")
    trace = trace_all(G, K)
    for eid in sorted(trace.segments):
        print(f"edge {eid}:")
        for seg in trace.segments[eid]:
            kind = "constant" if seg.is_constant else f"excess {seg.excess}"
            print(f"  [{seg.t0}, {seg.t1}]  {kind}")
            print(f"    at t0: {seg.divisor_at(G, seg.t0)}")
            print(f"    at t1: {seg.divisor_at(G, seg.t1)}")
    emit_plot(trace, args.out)
    print(f"plot data written to {args.out}")


if __name__ == "__main__":
    main()
