"""Exact phase-1 simplex over Q with Bland's rule.

Only feasibility is needed by the rest of the package, so the solver answers
one question: does ``A x = b, x >= 0`` have a solution?  Either a solution is
returned or a Farkas vector ``y`` with ``y^T A <= 0`` and ``y^T b > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass
class LPResult:
    feasible: bool
    x: Optional[list[Fraction]] = None
    farkas: Optional[list[Fraction]] = None


def feasible_point(A: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> LPResult:
    """Decide ``A x = b, x >= 0`` exactly."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    if m == 0:
        return LPResult(True, x=[Fraction(0)] * n)

    sign = [(-1 if Fraction(bi) < 0 else 1) for bi in b]
    # tableau rows: [A | I | b], artificials in columns n..n+m-1
    T = []
    for i in range(m):
        s = sign[i]
        row = [Fraction(a) * s for a in A[i]]
        row += [Fraction(int(i == k)) for k in range(m)]
        row.append(Fraction(b[i]) * s)
        T.append(row)
    basis = [n + i for i in range(m)]
    width = n + m

    # reduced-cost row for min sum(artificials): r_j = c_j - sum_i T[i][j]
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    z = [cost[j] - sum(T[i][j] for i in range(m)) for j in range(width)]
    zval = -sum(T[i][-1] for i in range(m))

    while True:
        entering = next((j for j in range(width) if z[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # cannot happen: phase-1 objective is bounded below by 0
            raise RuntimeError("unbounded phase-1 problem")
        r = best[1]
        p = T[r][entering]
        T[r] = [v / p for v in T[r]]
        # the pivot row is mostly zeros (slack and artificial blocks), so touch only its support
        support = [j for j, v in enumerate(T[r]) if v]
        pivot_row = T[r]
        for i in range(m):
            if i != r and T[i][entering] != 0:
                f = T[i][entering]
                row = T[i]
                for j in support:
                    row[j] -= f * pivot_row[j]
        f = z[entering]
        for j in support:
            if j < width:
                z[j] -= f * pivot_row[j]
        zval -= f * T[r][-1]
        basis[r] = entering

    if zval == 0:
        x = [Fraction(0)] * n
        for i, j in enumerate(basis):
            if j < n:
                x[j] = T[i][-1]
        return LPResult(True, x=x)

    # dual prices: z_j = c_j - y^T A'_j; on artificial column k, A'_k = e_k
    # so y_k = 1 - z_{n+k}; undo the row sign flips afterwards
    y = [(1 - z[n + k]) * sign[k] for k in range(m)]
    return LPResult(False, farkas=y)


def check_farkas(A: Sequence[Sequence], b: Sequence, y: Sequence) -> bool:
    """Exact check that ``y`` certifies infeasibility of ``A x = b, x >= 0``."""
    m = len(A)
    n = len(A[0]) if m else 0
    for j in range(n):
        if sum(Fraction(y[i]) * Fraction(A[i][j]) for i in range(m)) > 0:
            return False
    return sum(Fraction(y[i]) * Fraction(b[i]) for i in range(m)) > 0


def solve_inequalities(G: Sequence[Sequence], h: Sequence, nvars: int) -> LPResult:
    """Decide ``G u >= h`` with ``u`` free.

    On success ``x`` is a feasible ``u``.  On failure ``farkas`` is a vector
    ``y >= 0`` with ``y^T G = 0`` and ``y^T h > 0``.
    """
    k = len(G)
    if k == 0:
        return LPResult(True, x=[Fraction(0)] * nvars)
    # u = u_plus - u_minus, G u - s = h
    A = []
    for i, row in enumerate(G):
        A.append([Fraction(a) for a in row] + [-Fraction(a) for a in row]
                 + [Fraction(-int(i == t)) for t in range(k)])
    res = feasible_point(A, h)
    if res.feasible:
        x = res.x
        return LPResult(True, x=[x[j] - x[nvars + j] for j in range(nvars)])
    return res
