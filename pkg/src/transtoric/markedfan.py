"""Marked fans: a simplicial fan whose rays carry chosen generators in a group."""

from __future__ import annotations

import copy
import functools
import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exactlin as el
from .fan import DEFAULT_SEED, Fan, FanError, f_vector, underlying_complex, validate_fan


class NotValidated(ValueError):
    """Input is not a complete simplicial marked fan."""


class ParseError(ValueError):
    pass


class SchemaError(ValueError):
    pass


_RAT = re.compile(r"^-?\d+(/\d+)?$")


def parse_rat(x) -> Fraction:
    """Parse a JSON rational: an integer or a ``"p/q"`` string (never a float)."""
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RAT.match(x.strip()):
        q = Fraction(x.strip())
        return q
    raise ParseError(f"not a rational: {x!r} (expected an integer or a 'p/q' string)")


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class MarkedFan:
    """Vector space dimension, generators of the group, markings and maximal cones.

    ``gamma`` and ``lam`` are tuples of column vectors in Q^dim.  The fan's
    rays are the directions of the markings.
    """

    dim: int
    gamma: tuple[tuple[Fraction, ...], ...]
    lam: tuple[tuple[Fraction, ...], ...]
    cones: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, dim: int, gamma: Sequence[Sequence], lam: Sequence[Sequence],
              cones: Sequence[Sequence[int]]) -> "MarkedFan":
        g = tuple(tuple(el.vec(v)) for v in gamma)
        l = tuple(tuple(el.vec(v)) for v in lam)
        for v in g + l:
            if len(v) != dim:
                raise SchemaError(f"vector of length {len(v)} in dimension {dim}")
        c = tuple(tuple(sorted(int(i) for i in cone)) for cone in cones)
        return cls(dim, g, l, c)

    @property
    def nrays(self) -> int:
        return len(self.lam)

    @property
    def fan(self) -> Fan:
        return Fan.build(self.dim, self.lam, self.cones)

    def transform(self, A: Sequence[Sequence]) -> "MarkedFan":
        """Push everything forward along the linear map ``A``."""
        return MarkedFan.build(len(A), [el.matvec(A, v) for v in self.gamma],
                               [el.matvec(A, v) for v in self.lam], self.cones)

    def relabel(self, perm: Sequence[int]) -> "MarkedFan":
        """Ray ``i`` of the result is ray ``perm[i]`` of ``self``."""
        inv = {p: i for i, p in enumerate(perm)}
        lam = [self.lam[p] for p in perm]
        cones = [[inv[i] for i in c] for c in self.cones]
        return MarkedFan.build(self.dim, self.gamma, lam, cones)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "gamma": [[format_rat(x) for x in v] for v in self.gamma],
            "lambda": [[format_rat(x) for x in v] for v in self.lam],
            "cones": [list(c) for c in self.cones],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MarkedFan":
        for key in ("dim", "gamma", "lambda", "cones"):
            if key not in data:
                raise SchemaError(f"marked fan is missing field {key!r}")
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 0:
            raise SchemaError("'dim' must be a nonnegative integer")
        try:
            gamma = [[parse_rat(x) for x in v] for v in data["gamma"]]
            lam = [[parse_rat(x) for x in v] for v in data["lambda"]]
            cones = [[int(i) for i in c] for c in data["cones"]]
        except TypeError as exc:
            raise SchemaError(str(exc)) from exc
        return cls.build(dim, gamma, lam, cones)


@dataclass
class MarkedFanReport:
    gamma_spans: bool = False
    lambda_in_gamma: bool = False
    fan_ok: bool = False
    simplicial: bool = False
    complete: bool = False
    diagnostics: list[str] = field(default_factory=list)

    @property
    def in_class(self) -> bool:
        return all(self.flags().values())

    def flags(self) -> dict[str, bool]:
        return {
            "gamma_spans": self.gamma_spans,
            "lambda_in_gamma": self.lambda_in_gamma,
            "fan_ok": self.fan_ok,
            "simplicial": self.simplicial,
            "complete": self.complete,
        }


def validate_marked_fan(M: MarkedFan, seed: int = DEFAULT_SEED) -> MarkedFanReport:
    return copy.deepcopy(_validate_cached(M, seed))


@functools.lru_cache(maxsize=256)
def _validate_cached(M: MarkedFan, seed: int) -> MarkedFanReport:
    # instances are immutable, and three oracles often validate the same fan
    rep = MarkedFanReport()
    rep.gamma_spans = el.rank(el.columns_to_matrix(M.gamma, M.dim)) == M.dim if M.gamma else M.dim == 0
    if not rep.gamma_spans:
        rep.diagnostics.append("marked fan axiom (2): the group does not span the vector space")
    bad = [i for i, v in enumerate(M.lam) if not any(v) or not el.in_lattice(M.gamma, v, M.dim)]
    rep.lambda_in_gamma = not bad
    for i in bad:
        rep.diagnostics.append(f"marked fan axiom (4): marking {i} is not a nonzero element of the group")
    try:
        fan = M.fan
    except FanError as exc:
        rep.diagnostics.append(f"marked fan axiom (3): {exc}")
        return rep
    try:
        frep = validate_fan(fan, seed)
    except FanError as exc:
        rep.diagnostics.append(f"marked fan axiom (3): {exc}")
        return rep
    rep.simplicial = frep.simplicial_independent
    rep.fan_ok = frep.pairwise_interiors_disjoint
    rep.complete = frep.complete
    rep.diagnostics.extend(frep.diagnostics)
    return rep


def require_class(M: MarkedFan, seed: int = DEFAULT_SEED) -> None:
    rep = validate_marked_fan(M, seed)
    if not rep.in_class:
        raise NotValidated("; ".join(rep.diagnostics) or "not a complete simplicial marked fan")


@dataclass
class MarkedFanIso:
    """Linear isomorphism (dim2 x dim1 matrix) plus the induced ray bijection."""

    matrix: list[list[Fraction]]
    ray_bijection: list[int]

    def to_json(self) -> dict:
        return {
            "matrix": [[format_rat(x) for x in row] for row in self.matrix],
            "ray_bijection": list(self.ray_bijection),
        }


def verify_isomorphism(M1: MarkedFan, M2: MarkedFan, iso: MarkedFanIso) -> bool:
    """Check all three isomorphism conditions in exact arithmetic."""
    if M1.dim != M2.dim or M1.nrays != M2.nrays:
        return False
    A = iso.matrix
    n = M1.dim
    if n and el.rank(A) != n:
        return False
    pi = iso.ray_bijection
    if sorted(pi) != list(range(M2.nrays)):
        return False
    for i, v in enumerate(M1.lam):
        if el.matvec(A, v) != list(M2.lam[pi[i]]):
            return False
    cones2 = {tuple(sorted(c)) for c in M2.cones}
    mapped = {tuple(sorted(pi[i] for i in c)) for c in M1.cones}
    if mapped != cones2:
        return False
    image = [el.matvec(A, g) for g in M1.gamma]
    return el.lattices_equal(image, M2.gamma, n)


def _invariants(M: MarkedFan):
    return (M.dim, M.nrays, tuple(sorted(Counter(len(c) for c in M.cones).items())),
            tuple(f_vector(underlying_complex(M.fan))))


def are_isomorphic(M1: MarkedFan, M2: MarkedFan, validate: bool = True,
                   seed: int = DEFAULT_SEED) -> Optional[MarkedFanIso]:
    """Find an isomorphism of complete simplicial marked fans, or return None.

    Any isomorphism sends a fixed maximal cone of ``M1`` onto some maximal
    cone of ``M2``, and the images of that cone's markings pin the linear map
    down, so it suffices to try every (target cone, ordering) pair.
    """
    if validate:
        require_class(M1, seed)
        require_class(M2, seed)
    if _invariants(M1) != _invariants(M2):
        return None
    n = M1.dim
    if n == 0:
        iso = MarkedFanIso([], [])
        return iso if verify_isomorphism(M1, M2, iso) else None

    lam2_index = {tuple(v): j for j, v in enumerate(M2.lam)}
    cones2 = {tuple(sorted(c)) for c in M2.cones}
    anchor = M1.cones[0]
    src = el.columns_to_matrix([M1.lam[i] for i in anchor], n)
    src_inv = el.inverse(src)
    for target in M2.cones:
        for order in itertools.permutations(target):
            dst = el.columns_to_matrix([M2.lam[j] for j in order], n)
            A = el.matmul(dst, src_inv)
            pi = []
            for v in M1.lam:
                j = lam2_index.get(tuple(el.matvec(A, v)))
                if j is None:
                    break
                pi.append(j)
            else:
                if len(set(pi)) != len(pi):
                    continue
                if {tuple(sorted(pi[i] for i in c)) for c in M1.cones} != cones2:
                    continue
                iso = MarkedFanIso(A, pi)
                if verify_isomorphism(M1, M2, iso):
                    return iso
    return None


def invert_isomorphism(iso: MarkedFanIso) -> MarkedFanIso:
    inv = el.inverse(iso.matrix) if iso.matrix else []
    pi_inv = [0] * len(iso.ray_bijection)
    for i, j in enumerate(iso.ray_bijection):
        pi_inv[j] = i
    return MarkedFanIso(inv, pi_inv)
