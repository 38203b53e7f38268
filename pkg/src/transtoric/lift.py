"""Torus data (fan, complex subspace, lattice) and the passage to marked fans.

A :class:`C2Triple` lives in R^N with lattice Z^N.  Its complex subspace is
spanned by vectors ``b_j + i b'_j``; ``p`` is the real part and the quotient
map ``q`` kills the real span of all the ``b_j, b'_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exactlin as el
from .fan import DEFAULT_SEED, Fan, FanError, NonPrimitiveRay, is_nonsingular, validate_fan
from .markedfan import (MarkedFan, NotValidated, SchemaError, format_rat, parse_rat,
                        validate_marked_fan)


class NotInClass(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class C2Triple:
    N: int
    rays: tuple[tuple[int, ...], ...]
    cones: tuple[tuple[int, ...], ...]
    h: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...]

    @classmethod
    def build(cls, N: int, rays: Sequence[Sequence[int]], cones: Sequence[Sequence[int]],
              h: Sequence[tuple[Sequence, Sequence]] = ()) -> "C2Triple":
        r = tuple(tuple(int(x) for x in v) for v in rays)
        hh = tuple((tuple(el.vec(re)), tuple(el.vec(im))) for re, im in h)
        for v in r:
            if len(v) != N:
                raise SchemaError(f"ray of length {len(v)} in dimension {N}")
        for re, im in hh:
            if len(re) != N or len(im) != N:
                raise SchemaError("complex subspace basis vectors must have length N")
        c = tuple(tuple(sorted(int(i) for i in cone)) for cone in cones)
        return cls(N, r, c, hh)

    @property
    def l(self) -> int:
        return len(self.h)

    @property
    def fan(self) -> Fan:
        return Fan.build(self.N, self.rays, self.cones)

    def real_span(self) -> list[list[Fraction]]:
        """The vectors b_1, b'_1, ..., b_l, b'_l spanning p(h)."""
        out = []
        for re, im in self.h:
            out.append(list(re))
            out.append(list(im))
        return out

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "rays": [list(v) for v in self.rays],
            "cones": [list(c) for c in self.cones],
            "h": [{"re": [format_rat(x) for x in re], "im": [format_rat(x) for x in im]}
                  for re, im in self.h],
        }

    @classmethod
    def from_json(cls, data: dict) -> "C2Triple":
        for key in ("N", "rays", "cones"):
            if key not in data:
                raise SchemaError(f"triple is missing field {key!r}")
        rays = []
        for v in data["rays"]:
            row = []
            for x in v:
                q = parse_rat(x)
                if q.denominator != 1:
                    raise SchemaError("triple rays must be integer vectors")
                row.append(int(q))
            rays.append(row)
        h = []
        for pair in data.get("h", []):
            if "re" not in pair or "im" not in pair:
                raise SchemaError("each h entry needs 're' and 'im'")
            h.append(([parse_rat(x) for x in pair["re"]], [parse_rat(x) for x in pair["im"]]))
        return cls.build(int(data["N"]), rays, data["cones"], h)


@dataclass
class QuotientMap:
    """q : Q^N -> Q^(N - 2l), a deterministic coordinate complement of p(h)."""

    N: int
    pivots: list[int]
    free: list[int]
    span_rref: list[list[Fraction]]

    @property
    def dim(self) -> int:
        return len(self.free)

    def __call__(self, x: Sequence) -> list[Fraction]:
        x = [Fraction(t) for t in x]
        out = []
        for k in self.free:
            val = x[k]
            for row, p in zip(self.span_rref, self.pivots):
                val -= x[p] * row[k]
            out.append(val)
        return out

    def matrix(self) -> list[list[Fraction]]:
        cols = [self(e) for e in el.identity(self.N)]
        return el.columns_to_matrix(cols, self.dim)


def quotient_map(T: C2Triple) -> QuotientMap:
    span = T.real_span()
    if span:
        R, piv = el.rref(span)
        R = R[:len(piv)]
    else:
        R, piv = [], []
    free = [k for k in range(T.N) if k not in piv]
    return QuotientMap(T.N, piv, free, R)


@dataclass
class TripleReport:
    nonsingular: bool = False
    p_injective: bool = False
    quotient_complete: bool = False
    quotient_bijective: bool = False
    diagnostics: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.flags().values())

    def flags(self) -> dict[str, bool]:
        return {
            "nonsingular": self.nonsingular,
            "p_injective": self.p_injective,
            "quotient_complete": self.quotient_complete,
            "quotient_bijective": self.quotient_bijective,
        }


def validate_triple(T: C2Triple, seed: int = DEFAULT_SEED) -> TripleReport:
    rep = TripleReport()
    fan = T.fan
    try:
        rep.nonsingular = is_nonsingular(fan)
    except NonPrimitiveRay as exc:
        rep.diagnostics.append(f"C2 axiom (2): {exc}")
    if not rep.nonsingular and not rep.diagnostics:
        rep.diagnostics.append("C2 axiom (2): fan is not nonsingular for Z^N")
    span = T.real_span()
    rep.p_injective = el.rank(span) == len(span) if span else True
    if not rep.p_injective:
        rep.diagnostics.append("C2 axiom (3): p|h not injective")
        return rep

    q = quotient_map(T)
    qrays = [q(r) for r in T.rays]
    bij = True
    for i, v in enumerate(qrays):
        if not any(v):
            bij = False
            rep.diagnostics.append(f"C2 axiom (4): ray {i} is killed by q")
    if bij:
        for c in T.cones:
            M = el.columns_to_matrix([qrays[i] for i in c], q.dim)
            if c and el.rank(M) != len(c):
                bij = False
                rep.diagnostics.append(f"C2 axiom (4): q drops the dimension of cone {c}")
                break
    if bij:
        try:
            qfan = Fan.build(q.dim, qrays, T.cones)
            frep = validate_fan(qfan, seed)
        except FanError as exc:
            bij = False
            rep.diagnostics.append(f"C2 axiom (4): {exc}")
        else:
            # distinct cones stay distinct iff the images meet only in common faces
            if not frep.pairwise_interiors_disjoint:
                bij = False
                rep.diagnostics.append("C2 axiom (4): sigma -> q(sigma) is not injective")
            rep.quotient_complete = frep.complete
            if not frep.complete:
                rep.diagnostics.append("C2 axiom (4): q(Delta) is not complete")
    rep.quotient_bijective = bij
    return rep


def _choose_generators(M: MarkedFan, extra_gens: Optional[Sequence[Sequence]]) -> list[list[Fraction]]:
    gens = [list(v) for v in M.lam]
    if extra_gens is not None:
        gens += [el.vec(v) for v in extra_gens]
        if not el.lattices_equal(gens, M.gamma, M.dim):
            raise NotInClass("markings plus extra generators do not generate the group")
        if (len(gens) - M.dim) % 2:
            raise NotInClass("number of generators minus dimension must be even")
        return gens
    for g in M.gamma:
        if not el.in_lattice(gens, g, M.dim):
            gens.append(list(g))
    if (len(gens) - M.dim) % 2:
        gens.append(list(M.gamma[0]))
    return gens


def realize(M: MarkedFan, extra_gens: Optional[Sequence[Sequence]] = None,
            seed: int = DEFAULT_SEED) -> C2Triple:
    """Torus data whose quotient is isomorphic to ``M``.

    Generators are the markings followed by extra group elements; the fan is
    the coordinate fan over the underlying complex and the complex subspace
    pairs consecutive kernel vectors of ``e_j -> generator_j``.
    """
    rep = validate_marked_fan(M, seed)
    if not rep.in_class:
        raise NotInClass("; ".join(rep.diagnostics))
    gens = _choose_generators(M, extra_gens)
    N = len(gens)
    psi = el.columns_to_matrix(gens, M.dim)
    ker = el.kernel_basis(psi, ncols=N)
    if len(ker) != N - M.dim:
        raise NotInClass("generators do not span the vector space")
    h = [(ker[2 * j], ker[2 * j + 1]) for j in range(len(ker) // 2)]
    rays = [[int(i == k) for i in range(N)] for k in range(M.nrays)]
    cones = [c for c in M.cones]
    return C2Triple.build(N, rays, cones, h)


def generator_matrix(M: MarkedFan, extra_gens: Optional[Sequence[Sequence]] = None) -> list[list[Fraction]]:
    """The map psi : R^N -> V sending e_j to the j-th generator used by realize."""
    gens = _choose_generators(M, extra_gens)
    return el.columns_to_matrix(gens, M.dim)


def quotient(T: C2Triple, validate: bool = True, seed: int = DEFAULT_SEED) -> MarkedFan:
    if validate:
        rep = validate_triple(T, seed)
        if not rep.ok:
            raise NotValidated("; ".join(rep.diagnostics))
    q = quotient_map(T)
    gamma = [q(e) for e in el.identity(T.N)]
    lam = [q(el.primitive(r)) for r in T.rays]
    return MarkedFan.build(q.dim, gamma, lam, T.cones)


@dataclass
class PrincipalReport:
    surjective: bool = False
    fan_morphism: bool = False
    h_compatible: bool = False
    generator_bijection: bool = False
    kernel_connected: bool = False
    diagnostics: list[str] = field(default_factory=list)

    @property
    def principal(self) -> bool:
        return self.surjective and self.fan_morphism and self.h_compatible and self.generator_bijection

    def __bool__(self) -> bool:
        return self.principal

    def flags(self) -> dict[str, bool]:
        return {
            "surjective": self.surjective,
            "fan_morphism": self.fan_morphism,
            "h_compatible": self.h_compatible,
            "generator_bijection": self.generator_bijection,
            "kernel_connected": self.kernel_connected,
            "principal": self.principal,
        }


def _in_cone(fan: Fan, cone: Sequence[int], v: Sequence[Fraction]) -> bool:
    if not any(v):
        return True
    if not cone:
        return False
    x = el.solve(fan.cone_matrix(cone), v)
    return x is not None and all(c >= 0 for c in x)


def check_principal(dalpha: Sequence[Sequence[int]], T0: C2Triple, T: C2Triple) -> PrincipalReport:
    """Decide the principal-bundle criterion for a torus homomorphism.

    ``dalpha`` is an integer N x N0 matrix (the differential).  The map must
    be a morphism (cones into cones, h0 into h); it is principal iff it is
    surjective and induces a bijection of primitive ray generators.
    """
    D = [[int(x) for x in row] for row in dalpha]
    if len(D) != T.N or any(len(row) != T0.N for row in D):
        raise DimensionMismatch(f"dalpha must be {T.N} x {T0.N}")
    rep = PrincipalReport()
    rep.surjective = el.rank(D) == T.N if T.N else True
    if not rep.surjective:
        rep.diagnostics.append("dalpha is not surjective")

    fan0, fan = T0.fan, T.fan
    rep.fan_morphism = True
    for c0 in fan0.cones:
        images = [el.matvec(D, fan0.rays[i]) for i in c0]
        if not any(all(_in_cone(fan, c, v) for v in images) for c in fan.cones):
            rep.fan_morphism = False
            rep.diagnostics.append(f"cone {c0} is not mapped into a cone")
            break

    # d(b0 + i b0') = sum (a_j + i a'_j)(b_j + i b'_j) over Q, real and imaginary parts
    rep.h_compatible = True
    for re0, im0 in T0.h:
        tre, tim = el.matvec(D, re0), el.matvec(D, im0)
        cols = []
        for re, im in T.h:
            cols.append(list(re) + list(im))            # coefficient a_j
            cols.append([-x for x in im] + list(re))    # coefficient a'_j
        target = tre + tim
        if cols:
            ok = el.solve(el.columns_to_matrix(cols, 2 * T.N), target) is not None
        else:
            ok = not any(target)
        if not ok:
            rep.h_compatible = False
            rep.diagnostics.append("dalpha does not carry h0 into h")
            break

    prim0 = [el.primitive(r) for r in T0.rays]
    prim = {tuple(el.primitive(r)): j for j, r in enumerate(T.rays)}
    images = [prim.get(tuple(el.matvec(D, v))) for v in prim0]
    rep.generator_bijection = (None not in images and len(set(images)) == len(images)
                               and len(images) == len(T.rays))
    if not rep.generator_bijection:
        rep.diagnostics.append("dalpha is not a bijection on primitive ray generators")

    cols = el.transpose(D, ncols=T0.N) if D else []
    rep.kernel_connected = el.lattices_equal(cols, el.identity(T.N), T.N)
    return rep
