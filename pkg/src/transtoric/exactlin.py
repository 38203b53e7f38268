"""Exact rational and integer linear algebra.

Matrices are plain row-major lists of lists of :class:`fractions.Fraction`
(or ``int`` for the lattice routines).  Nothing here ever touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rat = Fraction
Vector = list
Matrix = list


def to_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def vec(xs: Iterable) -> list[Fraction]:
    return [to_frac(x) for x in xs]


def mat(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [vec(r) for r in rows]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    if not M:
        return 0, 0
    return len(M), len(M[0])


def transpose(M: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Transpose; ``ncols`` gives the row length when ``M`` has no rows."""
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def columns_to_matrix(cols: Sequence[Sequence], nrows: int) -> list[list]:
    """Stack column vectors side by side into an ``nrows`` x len(cols) matrix."""
    return [[c[i] for c in cols] for i in range(nrows)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(A[0])
    if inner != len(B):
        raise ValueError(f"shape mismatch {len(A)}x{inner} @ {len(B)}x?")
    ncols = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), 0)
             for j in range(ncols)] for i in range(len(A))]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def identity(n: int, one=1) -> list[list]:
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def _denominator_lcm(xs: Iterable) -> int:
    d = 1
    for x in xs:
        d = lcm(d, Fraction(x).denominator)
    return d


def integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in M:
        d = _denominator_lcm(row)
        out.append([int(Fraction(x) * d) for x in row])
    return out


def rank(M: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = integer_rows(M)
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, nrows):
            a = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan over Q)."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return [], []
    nrows, ncols = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        if p != 1:
            A[r] = [x / p for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots


def kernel_basis(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel {x : M x = 0}, one vector per free column.

    The vectors are the standard RREF basis: vector k has a 1 in the k-th free
    column and zeros in the other free columns.  ``ncols`` is needed only when
    ``M`` has no rows.
    """
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(M[0])
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence], v: Sequence, ncols: int | None = None) -> Optional[list[Fraction]]:
    """Some exact solution of ``M x = v``, or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is deterministic; it is the
    unique solution when ``M`` is square and nonsingular.
    """
    if not M:
        return [Fraction(0)] * (ncols or 0)
    n = len(M[0])
    aug = [list(row) + [v[i]] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(M: Sequence[Sequence]) -> Fraction:
    """Determinant via Bareiss on denominator-cleared rows."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    A = []
    for row in M:
        d = _denominator_lcm(row)
        scale /= d
        A.append([int(Fraction(x) * d) for x in row])
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (p * A[i][j] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = p
    return sign * A[n - 1][n - 1] * scale


# --------------------------------------------------------------------------
# integer lattices


def hnf(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``M @ U == H`` and ``U`` unimodular.  ``H`` is in
    lower column echelon form: pivot rows strictly increase left to right,
    pivots are positive, entries to the left of a pivot (in its row) lie in
    ``[0, pivot)``, and zero columns come last.
    """
    H = [[int(x) for x in row] for row in M]
    if not H:
        return [], []
    nrows, ncols = len(H), len(H[0])
    U = identity(ncols)

    def colop(dst: int, src: int, k: int) -> None:
        # column dst += k * column src
        for row in H:
            row[dst] += k * row[src]
        for row in U:
            row[dst] += k * row[src]

    def swap(a: int, b: int) -> None:
        for row in H:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    def negate(a: int) -> None:
        for row in H:
            row[a] = -row[a]
        for row in U:
            row[a] = -row[a]

    k = 0
    for i in range(nrows):
        if k == ncols:
            break
        # Euclid across columns k.. until only column k is nonzero in row i
        while True:
            nz = [j for j in range(k, ncols) if H[i][j] != 0]
            if not nz:
                break
            j_min = min(nz, key=lambda j: abs(H[i][j]))
            if j_min != k:
                swap(k, j_min)
            done = True
            for j in range(k + 1, ncols):
                if H[i][j] != 0:
                    colop(j, k, -(H[i][j] // H[i][k]))
                    if H[i][j] != 0:
                        done = False
            if done:
                break
        if H[i][k] == 0:
            continue
        if H[i][k] < 0:
            negate(k)
        p = H[i][k]
        for j in range(k):
            q = H[i][j] // p
            if q:
                colop(j, k, -q)
        k += 1
    return H, U


def snf_diag(M: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (length min(rows, cols))."""
    A = [[int(x) for x in row] for row in M]
    if not A or not A[0]:
        return []
    nrows, ncols = len(A), len(A[0])
    out = []
    for t in range(min(nrows, ncols)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if A[i][j]]
        if not nz:
            out.extend([0] * (min(nrows, ncols) - t))
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        changed = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if changed:
                continue
            # pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        out.append(abs(A[t][t]))
    return out


def _scaled_integer_columns(cols: Sequence[Sequence], dim: int, scale: int) -> list[list[int]]:
    M = columns_to_matrix(cols, dim) if cols else [[] for _ in range(dim)]
    return [[int(Fraction(x) * scale) for x in row] for row in M]


def _nonzero_hnf(M: list[list[int]]) -> list[tuple[int, ...]]:
    if not M or not M[0]:
        return []
    H, _ = hnf(M)
    cols = transpose(H)
    return [tuple(c) for c in cols if any(c)]


def lattice_hnf(gens: Sequence[Sequence], dim: int, scale: int | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Canonical form of the group generated by rational vectors ``gens``.

    Returns ``(scale, columns)`` where ``columns`` are the nonzero HNF columns
    of ``scale * gens``; two groups are equal iff their canonical forms at a
    common scale agree.
    """
    if scale is None:
        scale = _denominator_lcm(x for g in gens for x in g)
    return scale, _nonzero_hnf(_scaled_integer_columns(gens, dim, scale))


def in_lattice(gens: Sequence[Sequence], v: Sequence, dim: int | None = None) -> bool:
    """Whether ``v`` is an integer combination of the rational vectors ``gens``."""
    dim = len(v) if dim is None else dim
    scale = _denominator_lcm([x for g in gens for x in g] + list(v))
    base = _nonzero_hnf(_scaled_integer_columns(gens, dim, scale))
    ext = _nonzero_hnf(_scaled_integer_columns(list(gens) + [v], dim, scale))
    return base == ext


def lattices_equal(gens1: Sequence[Sequence], gens2: Sequence[Sequence], dim: int) -> bool:
    scale = _denominator_lcm([x for g in list(gens1) + list(gens2) for x in g])
    return lattice_hnf(gens1, dim, scale)[1] == lattice_hnf(gens2, dim, scale)[1]


def is_primitive(v: Sequence) -> bool:
    """Integer vector with coprime entries (the zero vector is not primitive)."""
    if any(Fraction(x).denominator != 1 for x in v):
        return False
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def primitive(v: Sequence) -> list[int]:
    """Primitive integer vector on the ray through a nonzero rational ``v``."""
    d = _denominator_lcm(v)
    ints = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return [x // g for x in ints]


def positively_proportional(u: Sequence, v: Sequence) -> bool:
    """u = c v for some c > 0 (both assumed nonzero)."""
    c = None
    for a, b in zip(u, v):
        a, b = Fraction(a), Fraction(b)
        if (a == 0) != (b == 0):
            return False
        if a == 0:
            continue
        r = a / b
        if r <= 0 or (c is not None and r != c):
            return False
        c = r
    return c is not None
