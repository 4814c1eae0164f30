#!/usr/bin/env python3
"""Rebuild the 15-dimensional spiked simplex from its vertices and walk the
whole pipeline: parallelepiped enumeration, basis conversion, inequality
audit, and the location of the nonunimodal dip."""

from ehrstar import (
    box_points_simplex,
    eval_ehrhart,
    f_from_h,
    full_audit,
    h_star_of,
    make_higashitani,
)

simplex = make_higashitani(7, 131, 7, 132)
print(f"simplex: dimension {simplex.ambient_dim}, "
      f"normalized volume {simplex.normalized_volume}")
print(f"spike vertex: {simplex.vertices[-1]}")

table = box_points_simplex(simplex)
print(f"\nparallelepiped heights ({table.normalized_volume} residues):")
print("  " + " ".join(str(x) for x in table.heights))

h = h_star_of(simplex)
f = f_from_h(h)
print(f"\nh*: {' '.join(str(x) for x in h.entries)}")
print(f"f*: {' '.join(str(x) for x in f.entries)}")
print(f"first dilate counts: {[eval_ehrhart(h, n) for n in range(5)]}")

report = full_audit(h)
print(f"\nunimodal: {report.unimodal}")
print(f"first dip: index {report.first_dip} "
      f"({f.entries[8]} > {f.entries[9]} < {f.entries[10]})")
print("\ninequality checks:")
for r in report.results:
    status = "n/a " if not r.applicable else ("ok  " if r.holds else "FAIL")
    print(f"  [{status}] {r.name}")
