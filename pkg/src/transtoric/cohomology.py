"""Basic Betti numbers of a polytopal complete simplicial marked fan.

Three independent routes:

* elimination: graded dimensions of Q[x_1..x_m] / (Stanley-Reisner + linear
  ideal), computed degree by degree on face-supported monomials;
* h-vector: the f-vector transform of the underlying complex;
* Morse: count polytope vertices by the number of edges going up for a
  generic linear functional.

Only even degrees are stored; odd basic Betti numbers vanish identically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import exactlin as el
from .fan import DEFAULT_SEED, f_vector, h_vector, underlying_complex
from .markedfan import MarkedFan, require_class
from .polytope import Certificate, build_polytope, polytopality


class NotPolytopal(ValueError):
    pass


class DegenerateFunctional(ValueError):
    pass


class LsopFailure(RuntimeError):
    """The linear forms are not a linear system of parameters on some cone."""


@dataclass(frozen=True)
class BettiVector:
    n: int
    b: tuple[int, ...]      # b_0, b_2, ..., b_2n
    h: tuple[int, ...]
    polytopal: bool = False  # produced under a feasible polytopality certificate

    def betti(self, k: int) -> int:
        """b_k in any degree; odd degrees are zero."""
        if k % 2 or not 0 <= k <= 2 * self.n:
            return 0
        return self.b[k // 2]

    def full(self) -> list[int]:
        return [self.betti(k) for k in range(2 * self.n + 1)]

    def to_json(self) -> dict:
        return {"b": list(self.b), "h": list(self.h)}


def _monomials(support_ok, m: int, d: int) -> list[tuple[int, ...]]:
    """Degree-d monomials (as sorted index tuples) whose support is a face."""
    return [mono for mono in itertools.combinations_with_replacement(range(m), d)
            if support_ok(set(mono))]


def linear_forms(M: MarkedFan) -> list[list[Fraction]]:
    """Row k holds the coefficients <e_k^*, lambda_i> of the k-th linear form."""
    return [[M.lam[i][k] for i in range(M.nrays)] for k in range(M.dim)]


def check_lsop(M: MarkedFan) -> None:
    theta = linear_forms(M)
    for c in M.cones:
        sub = [[row[i] for i in c] for row in theta]
        if M.dim and el.rank(sub) != M.dim:
            raise LsopFailure(f"linear forms restricted to cone {c} have rank < {M.dim}")


def _quotient_dims(M: MarkedFan, top: int) -> tuple[list[int], list[int]]:
    """(dim of (Q[x]/I)_d, rank of the linear ideal's image there) for d = 0..top."""
    K = underlying_complex(M.fan)
    facets = [set(f) for f in K.facets]

    def is_face(s: set) -> bool:
        return not s or any(s <= f for f in facets)

    theta = linear_forms(M)
    m = M.nrays
    sizes, ranks = [], []
    basis_prev: list[tuple[int, ...]] = []
    for d in range(top + 1):
        basis = _monomials(is_face, m, d)
        index = {mono: k for k, mono in enumerate(basis)}
        rows = []
        if d >= 1:
            for mu in basis_prev:
                for row in theta:
                    vec = [Fraction(0)] * len(basis)
                    for i, c in enumerate(row):
                        if c == 0:
                            continue
                        prod = tuple(sorted(mu + (i,)))
                        k = index.get(prod)
                        if k is not None:       # otherwise the product lies in I
                            vec[k] += c
                    if any(vec):
                        rows.append(vec)
        sizes.append(len(basis))
        ranks.append(el.rank(rows) if rows else 0)
        basis_prev = basis
    return sizes, ranks


def _certified(cert: Optional[Certificate]) -> bool:
    return cert is not None and cert.feasible


def _require_polytopal(M: MarkedFan, cert: Optional[Certificate]) -> Certificate:
    cert = cert if cert is not None else polytopality(M)
    if not cert.feasible:
        raise NotPolytopal("no admissible offsets exist: the fan is not polytopal")
    return cert


def quotient_dimensions(M: MarkedFan) -> list[int]:
    """Raw graded dimensions of the presentation, with no polytopality check."""
    sizes, ranks = _quotient_dims(M, M.dim + 1)
    return [s - r for s, r in zip(sizes, ranks)]


def betti_by_elimination(M: MarkedFan, cert: Optional[Certificate] = None,
                         check: bool = True, seed: int = DEFAULT_SEED) -> BettiVector:
    if check:
        require_class(M, seed)
        cert = _require_polytopal(M, cert)
    check_lsop(M)
    dims = quotient_dimensions(M)
    if dims[-1] != 0:
        raise LsopFailure(f"quotient is nonzero in degree {2 * (M.dim + 1)}")
    h = tuple(h_vector(f_vector(underlying_complex(M.fan)), M.dim))
    return BettiVector(M.dim, tuple(dims[:-1]), h, _certified(cert))


def betti_by_hvector(M: MarkedFan, check: bool = True, seed: int = DEFAULT_SEED,
                     cert: Optional[Certificate] = None) -> BettiVector:
    """Needs no polytope; pass ``cert`` to mark the result as polytopal."""
    if check:
        require_class(M, seed)
    f = f_vector(underlying_complex(M.fan))
    h = tuple(h_vector(f, M.dim))
    return BettiVector(M.dim, h, h, _certified(cert))


def default_functionals(dim: int, seed: int = DEFAULT_SEED):
    """Moment-curve covectors (1, t, t^2, ...) for t = 2, 3, ..., then seeded random ones."""
    for t in range(2, 2 + 4 * (dim + 3)):
        yield [Fraction(t) ** k for k in range(dim)]
    rng = random.Random(seed)
    while True:
        yield [Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 997)) for _ in range(dim)]


def _adjacency(M: MarkedFan) -> dict:
    adj: dict = {c: [] for c in M.cones}
    by_ridge: dict = {}
    for c in M.cones:
        for r in itertools.combinations(c, M.dim - 1):
            by_ridge.setdefault(r, []).append(c)
    for cs in by_ridge.values():
        for a, b in itertools.combinations(cs, 2):
            adj[a].append(b)
            adj[b].append(a)
    return adj


def betti_by_morse(M: MarkedFan, cert: Optional[Certificate] = None,
                   xi: Optional[Sequence] = None, check: bool = True,
                   seed: int = DEFAULT_SEED) -> BettiVector:
    """Vertices counted by co-index (twice the number of edges going up)."""
    if check:
        require_class(M, seed)
    cert = _require_polytopal(M, cert)
    P = build_polytope(M, cert.b)
    if not P.admissible:
        raise NotPolytopal("certificate offsets are not admissible")
    n = M.dim
    if n == 0:
        return BettiVector(0, (1,), (1,), True)
    adj = _adjacency(M)

    def values_for(w):
        vals = {c: el.dot(w, P.vertex_table[c]) for c in M.cones}
        if len(set(vals.values())) != len(vals):
            return None
        return vals

    if xi is not None:
        vals = values_for(el.vec(xi))
        if vals is None:
            raise DegenerateFunctional("functional takes equal values on two vertices")
    else:
        for w in default_functionals(n, seed):
            vals = values_for(w)
            if vals is not None:
                break
    counts = [0] * (n + 1)
    for c in M.cones:
        up = sum(1 for d in adj[c] if vals[d] > vals[c])
        counts[up] += 1
    h = tuple(h_vector(f_vector(underlying_complex(M.fan)), n))
    return BettiVector(n, tuple(counts), h, True)


def hodge_diamond(B: BettiVector) -> list[list[int]]:
    """Table H^{p,q}: b_2p on the diagonal, zero elsewhere."""
    if not B.polytopal:
        raise NotPolytopal("the diagonal Hodge table needs a polytopal fan")
    n = B.n
    return [[B.b[p] if p == q else 0 for q in range(n + 1)] for p in range(n + 1)]


def forgetful_kernel_dims(M: MarkedFan, cert: Optional[Certificate] = None,
                          check: bool = True, seed: int = DEFAULT_SEED) -> list[int]:
    """Per degree 0..n, the dimension of the linear ideal's image in the SR ring."""
    if check:
        require_class(M, seed)
        _require_polytopal(M, cert)
    _, ranks = _quotient_dims(M, M.dim)
    return ranks
