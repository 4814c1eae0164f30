#!/usr/bin/env python3
"""Scan spiked h*-patterns in dimension 14 for nonunimodal f*-vectors.

Whether a 14-dimensional lattice polytope with nonunimodal f*-vector
exists is open; everything printed here is a candidate vector that merely
survives the necessary conditions (nonunimodal f*, Hibi inequalities).
Nothing below certifies that a polytope with such an h*-vector exists.

Usage: python scripts/search_dim14.py [--max-val N] [--two-spikes]
"""

import argparse

from ehrstar import SpikeRange, search_nonunimodal

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--max-val", type=int, default=400,
                    help="upper bound for spike values (default 400)")
parser.add_argument("--two-spikes", action="store_true",
                    help="also scan two-spike patterns (slower)")
parser.add_argument("--budget", type=int, default=5_000_000)
args = parser.parse_args()

d = 14

print(f"single-spike patterns (1, 0^a, N, 0^b) at d = {d}, N <= {args.max_val}:")
outcome = search_nonunimodal(d, [SpikeRange(1, d, 2, args.max_val)], args.budget)
for c in outcome.candidates:
    (pos, val), = c.spikes
    print(f"  position {pos:2d}  value {val:4d}  first dip at {c.first_dip}")
print(f"  -> {len(outcome.candidates)} candidate(s) from {outcome.scanned} patterns"
      + ("  [budget exhausted]" if outcome.truncated else ""))

if args.two_spikes:
    print(f"\ntwo-spike patterns (1, 0^a, M, 0^c, N, 0^b) at d = {d}:")
    outcome2 = search_nonunimodal(
        d,
        [SpikeRange(1, d - 1, 2, args.max_val), SpikeRange(2, d, 2, args.max_val)],
        args.budget,
    )
    for c in outcome2.candidates[:40]:
        (p1, v1), (p2, v2) = c.spikes
        print(f"  positions {p1:2d},{p2:2d}  values {v1:4d},{v2:4d}  "
              f"first dip at {c.first_dip}")
    extra = len(outcome2.candidates) - 40
    if extra > 0:
        print(f"  ... and {extra} more")
    print(f"  -> {len(outcome2.candidates)} candidate(s) from {outcome2.scanned} patterns"
          + ("  [budget exhausted]" if outcome2.truncated else ""))

print(f"\nnote: {outcome.disclaimer}")
