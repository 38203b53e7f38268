"""Simplicial fans: validation, completeness, nonsingularity and f-vectors."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from . import exactlin as el
from .lp import feasible_point

DEFAULT_SEED = 20170101


class FanError(ValueError):
    pass


class RaysDegenerate(FanError):
    """Some maximal cone has linearly dependent rays."""


class ProbeTie(FanError):
    """A probe direction could not be moved off the cone boundaries."""


class NonPrimitiveRay(FanError):
    pass


@dataclass(frozen=True)
class Fan:
    """A simplicial fan given by ray vectors and maximal cones (index tuples)."""

    dim: int
    rays: tuple[tuple[Fraction, ...], ...]
    cones: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, dim: int, rays: Sequence[Sequence], cones: Sequence[Sequence[int]]) -> "Fan":
        rays_t = tuple(tuple(el.vec(r)) for r in rays)
        for r in rays_t:
            if len(r) != dim:
                raise FanError(f"ray {r} does not live in dimension {dim}")
            if not any(r):
                raise FanError("rays must be nonzero")
        cones_t = tuple(tuple(sorted(int(i) for i in c)) for c in cones)
        for c in cones_t:
            if len(set(c)) != len(c) or any(not 0 <= i < len(rays_t) for i in c):
                raise FanError(f"bad cone index set {c}")
        used = {i for c in cones_t for i in c}
        if len(used) != len(rays_t):
            raise FanError("every ray must lie in some maximal cone")
        sets = [set(c) for c in cones_t]
        for a, b in itertools.permutations(range(len(sets)), 2):
            if sets[a] <= sets[b]:
                raise FanError(f"cone {cones_t[a]} is contained in cone {cones_t[b]}")
        return cls(dim, rays_t, cones_t)

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cone_matrix(self, cone: Sequence[int]) -> list[list[Fraction]]:
        """dim x len(cone) matrix whose columns are the cone's rays."""
        return el.columns_to_matrix([self.rays[i] for i in cone], self.dim)

    def transform(self, A: Sequence[Sequence]) -> "Fan":
        """Apply the linear map ``A`` to every ray."""
        rays = [el.matvec(A, r) for r in self.rays]
        return Fan.build(len(A), rays, self.cones)


@dataclass(frozen=True)
class SimplicialComplex:
    nvertices: int
    facets: tuple[tuple[int, ...], ...]

    def faces(self) -> set[tuple[int, ...]]:
        out: set[tuple[int, ...]] = {()}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        return out

    def is_face(self, s: Sequence[int]) -> bool:
        ss = set(s)
        return any(ss <= set(f) for f in self.facets)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1


@dataclass
class FanReport:
    simplicial_independent: bool = False
    pairwise_interiors_disjoint: bool = False
    pure_full_dim: bool = False
    wall_condition: bool = False
    complete: bool = False
    diagnostics: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all((self.simplicial_independent, self.pairwise_interiors_disjoint,
                    self.pure_full_dim, self.wall_condition, self.complete))

    def flags(self) -> dict[str, bool]:
        return {
            "simplicial_independent": self.simplicial_independent,
            "pairwise_interiors_disjoint": self.pairwise_interiors_disjoint,
            "pure_full_dim": self.pure_full_dim,
            "wall_condition": self.wall_condition,
            "complete": self.complete,
        }


def _cones_meet_in_common_face(fan: Fan, c1: Sequence[int], c2: Sequence[int]) -> bool:
    """Exact test that the intersection of two simplicial cones is their shared face.

    Feasibility of ``sum a_i r_i = sum c_j s_j`` with ``a, c >= 0`` and unit
    total weight on rays not shared by both cones would exhibit a point of
    the intersection outside the cone on the shared rays.
    """
    shared = set(c1) & set(c2)
    if len(shared) == len(c1) and len(shared) == len(c2):
        return True
    A: list[list[Fraction]] = []
    for d in range(fan.dim):
        A.append([fan.rays[i][d] for i in c1] + [-fan.rays[j][d] for j in c2])
    A.append([Fraction(int(i not in shared)) for i in c1] + [Fraction(int(j not in shared)) for j in c2])
    b = [Fraction(0)] * fan.dim + [Fraction(1)]
    return not feasible_point(A, b).feasible


def probe_directions(dim: int, seed: int = DEFAULT_SEED, n_random: int = 8) -> list[list[Fraction]]:
    """Deterministic probes: +-e_i, e_i +- e_j, then seeded random rationals."""
    probes: list[list[Fraction]] = []
    for i in range(dim):
        for s in (1, -1):
            v = [Fraction(0)] * dim
            v[i] = Fraction(s)
            probes.append(v)
    for i, j in itertools.combinations(range(dim), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [Fraction(0)] * dim
            v[i], v[j] = Fraction(si), Fraction(sj)
            probes.append(v)
    rng = random.Random(seed)
    for _ in range(n_random):
        v = [Fraction(rng.randint(-97, 97), rng.randint(1, 31)) for _ in range(dim)]
        if any(v):
            probes.append(v)
    return probes


def _perturbation(dim: int, k: int) -> list[Fraction]:
    # fixed schedule: moment-curve direction with shrinking step
    t = Fraction(1, 7 + k)
    return [t ** (i + 1) / (k + 2) for i in range(dim)]


def _locate(inverses: list[list[list[Fraction]]], v: Sequence[Fraction]) -> Optional[int]:
    """Number of cones containing ``v`` in their interior, or None on a boundary hit."""
    count = 0
    for inv in inverses:
        coeffs = el.matvec(inv, v)
        if all(c > 0 for c in coeffs):
            count += 1
        elif all(c >= 0 for c in coeffs):
            return None
    return count


def probe_count(fan: Fan, v: Sequence[Fraction], max_tries: int = 64) -> int:
    """How many maximal cones contain a generic point near ``v``."""
    inverses = [el.inverse(fan.cone_matrix(c)) for c in fan.cones]
    w = list(v)
    for k in range(max_tries):
        n = _locate(inverses, w)
        if n is not None:
            return n
        w = [a + b for a, b in zip(v, _perturbation(fan.dim, k))]
    raise ProbeTie(f"probe {list(map(str, v))} stays on a cone boundary")


def validate_fan(fan: Fan, seed: int = DEFAULT_SEED) -> FanReport:
    rep = FanReport()
    for c in fan.cones:
        if el.rank(fan.cone_matrix(c)) != len(c):
            raise RaysDegenerate(f"maximal cone {c} has linearly dependent rays")
    rep.simplicial_independent = True

    rays_distinct = True
    for i, j in itertools.combinations(range(fan.nrays), 2):
        if el.positively_proportional(fan.rays[i], fan.rays[j]):
            rays_distinct = False
            rep.diagnostics.append(f"rays {i} and {j} span the same 1-cone")
    disjoint = rays_distinct
    if disjoint:
        for a, b in itertools.combinations(fan.cones, 2):
            if not _cones_meet_in_common_face(fan, a, b):
                disjoint = False
                rep.diagnostics.append(f"cones {a} and {b} do not meet in a common face")
                break
    rep.pairwise_interiors_disjoint = disjoint

    rep.pure_full_dim = all(len(c) == fan.dim for c in fan.cones)
    if rep.pure_full_dim and fan.dim == 0:
        rep.wall_condition = True
    elif rep.pure_full_dim:
        ridges: Counter = Counter()
        for c in fan.cones:
            for r in itertools.combinations(c, fan.dim - 1):
                ridges[r] += 1
        bad = [r for r, n in ridges.items() if n != 2]
        rep.wall_condition = not bad
        if bad:
            rep.diagnostics.append(f"ridge {bad[0]} lies in {ridges[bad[0]]} maximal cone(s)")
    else:
        rep.diagnostics.append("maximal cones are not all full-dimensional")

    if rep.pure_full_dim and rep.wall_condition and rep.pairwise_interiors_disjoint:
        if fan.dim == 0:
            rep.complete = len(fan.cones) == 1
        else:
            rep.complete = True
            for v in probe_directions(fan.dim, seed):
                n = probe_count(fan, v)
                if n != 1:
                    rep.complete = False
                    rep.diagnostics.append(f"probe {[str(x) for x in v]} lies in {n} maximal cones")
                    break
    return rep


def is_nonsingular(fan: Fan) -> bool:
    """Every maximal cone's primitive rays extend to a basis of Z^n."""
    for r in fan.rays:
        if not el.is_primitive(r):
            raise NonPrimitiveRay(f"ray {[str(x) for x in r]} is not a primitive integer vector")
    for c in fan.cones:
        M = [[int(x) for x in row] for row in fan.cone_matrix(c)]
        if len(c) and any(d != 1 for d in el.snf_diag(M)):
            return False
    return True


def underlying_complex(fan: Fan) -> SimplicialComplex:
    facets = tuple(c for c in fan.cones if c)
    return SimplicialComplex(fan.nrays, facets)


def f_vector(K: SimplicialComplex) -> list[int]:
    """(f_{-1}, f_0, ..., f_{d-1}) where d-1 is the top face dimension."""
    counts: Counter = Counter(len(s) for s in K.faces())
    top = max(counts)
    return [counts.get(k, 0) for k in range(top + 1)]


def h_vector(f: Sequence[int], n: int) -> list[int]:
    """h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_{i-1} for k = 0..n."""
    fv = list(f) + [0] * (n + 1 - len(f))
    return [sum((-1) ** (k - i) * comb(n - i, k - i) * fv[i] for i in range(k + 1))
            for k in range(n + 1)]
