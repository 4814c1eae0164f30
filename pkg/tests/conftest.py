"""Shared test oracles.

Production code never derives half-space descriptions from vertices, so
the facet derivation for simplices lives here: every d-subset of the
vertex set spans a facet, whose normal comes from cofactors of the edge
matrix. `fraction_brute_count` is a from-scratch membership counter
(fresh Gaussian elimination per point, Fractions throughout) used to pin
the fast kernels on small cases.
"""

from fractions import Fraction
from itertools import product

from ehrstar.intlinalg import det
from ehrstar.lattice import HalfSpace, LatticePolytope, make_random_simplex


def simplex_facets(vertices) -> list[HalfSpace]:
    """Exact half-space description of a nondegenerate simplex."""
    d = len(vertices[0])
    verts = list(vertices)
    out = []
    for i, opposite in enumerate(verts):
        pts = verts[:i] + verts[i + 1 :]
        base = pts[0]
        edges = [[p[j] - base[j] for j in range(d)] for p in pts[1:]]
        normal = []
        for j in range(d):
            minor = [row[:j] + row[j + 1 :] for row in edges]
            normal.append((-1) ** j * det(minor))
        offset = -sum(a * x for a, x in zip(normal, base))
        side = sum(a * x for a, x in zip(normal, opposite)) + offset
        assert side != 0, "degenerate simplex handed to the facet oracle"
        if side < 0:
            normal = [-a for a in normal]
            offset = -offset
        out.append(HalfSpace(offset, tuple(normal)))
    return out


def as_halfspace_polytope(vertices) -> LatticePolytope:
    d = len(vertices[0])
    return LatticePolytope(d, halfspaces=tuple(simplex_facets(vertices)))


def _solve_gauss(rows):
    """Solve an augmented square rational system; None if singular."""
    n = len(rows)
    a = [list(map(Fraction, row)) for row in rows]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def fraction_brute_count(vertices, n: int) -> int:
    """Tiny-case oracle: box scan with per-point barycentric solves."""
    d = len(vertices[0])
    lows = [n * min(v[j] for v in vertices) for j in range(d)]
    highs = [n * max(v[j] for v in vertices) for j in range(d)]
    count = 0
    for q in product(*[range(lo, hi + 1) for lo, hi in zip(lows, highs)]):
        rows = [[v[i] for v in vertices] + [q[i]] for i in range(d)]
        rows.append([1] * len(vertices) + [n])
        coeffs = _solve_gauss(rows)
        assert coeffs is not None
        if all(c >= 0 for c in coeffs):
            count += 1
    return count


def bounded_volume_simplices(d, coord_bound, count, *, volume_cap=None, seed0=0):
    """Deterministic stream of random simplices, filtered by volume."""
    out = []
    seed = seed0
    while len(out) < count:
        s = make_random_simplex(d, coord_bound, seed)
        seed += 1
        if volume_cap is None or s.normalized_volume <= volume_cap:
            out.append(s)
    return out
