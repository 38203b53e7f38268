"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= M[i][perm[i]]
        total += (-1) ** inv * prod
    return total


def determinantal_divisors(M):
    """d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}."""
    rows, cols = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, int(leibniz_det([[M[r][c] for c in cs] for r in rs])))
        out.append(g)
    return out


def invariant_factors(M):
    d = determinantal_divisors(M)
    out, prev = [], 1
    for x in d:
        if x == 0:
            out.append(0)
            prev = 0
            continue
        out.append(x // prev)
        prev = x
    return out


def brute_force_faces(facets):
    faces = set()
    for f in facets:
        for k in range(len(f) + 1):
            faces.update(itertools.combinations(sorted(f), k))
    return faces


def morse_down_counts(vertices, edges, xi):
    """b by counting, for each vertex, neighbours with a smaller xi-value."""
    val = {k: sum(a * b for a, b in zip(xi, v)) for k, v in vertices.items()}
    n = max(len(ns) for ns in edges.values()) if edges else 0
    counts = [0] * (n + 1)
    for k, ns in edges.items():
        counts[sum(1 for w in ns if val[w] < val[k])] += 1
    return counts


def float_lp_feasible(G, h, nvars):
    """scipy's HiGHS on G u >= h with u free (floating point, small data only)."""
    from scipy.optimize import linprog
    A = [[-float(x) for x in row] for row in G]
    res = linprog([0.0] * nvars, A_ub=A, b_ub=[-float(x) for x in h],
                  bounds=[(None, None)] * nvars, method="highs")
    return res.status == 0
