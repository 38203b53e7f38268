"""Polytopes cut out by half-spaces <x, mu_i> >= b_i with normals from a marked fan.

Points of the polytope live in the dual space; coordinates are taken with
respect to the dual of the standard basis, so the pairing is the plain dot
product.  A polytope is stored as (reference fan, offsets) and its vertices
are derived: one candidate vertex per maximal cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exactlin as el
from .lp import solve_inequalities
from .markedfan import MarkedFan, format_rat, parse_rat


class SingularVertexSystem(ValueError):
    pass


class FanMismatch(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class SlackViolated(ValueError):
    pass


@dataclass(frozen=True)
class Polytope:
    fan: MarkedFan
    b: tuple[Fraction, ...]
    vertex_table: dict
    admissible: bool

    @property
    def dim(self) -> int:
        return self.fan.dim

    @property
    def mus(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.fan.lam

    def vertex(self, cone: Sequence[int]) -> list[Fraction]:
        return self.vertex_table[tuple(sorted(cone))]

    def vertices(self) -> list[list[Fraction]]:
        return [self.vertex_table[c] for c in self.fan.cones]

    def to_json(self) -> dict:
        return {
            "b": [format_rat(x) for x in self.b],
            "admissible": self.admissible,
            "vertices": [{"cone": list(c), "vertex": [format_rat(x) for x in self.vertex_table[c]]}
                         for c in self.fan.cones],
        }


def _cone_inverse(fan: MarkedFan, cone: Sequence[int]) -> list[list[Fraction]]:
    # rows mu_i, i in cone: <v, mu_i> = b_i  <=>  A v = b_sigma
    A = [list(fan.lam[i]) for i in cone]
    try:
        return el.inverse(A)
    except (ZeroDivisionError, IndexError) as exc:
        raise SingularVertexSystem(f"cone {cone} does not determine a vertex") from exc


def build_polytope(fan: MarkedFan, b: Sequence) -> Polytope:
    b = tuple(el.vec(b))
    if len(b) != fan.nrays:
        raise FanMismatch(f"expected {fan.nrays} offsets, got {len(b)}")
    table = {}
    admissible = True
    for c in fan.cones:
        if fan.dim == 0:
            table[c] = []
            continue
        v = el.matvec(_cone_inverse(fan, c), [b[i] for i in c])
        table[c] = v
        cs = set(c)
        for j in range(fan.nrays):
            if j not in cs and el.dot(v, fan.lam[j]) <= b[j]:
                admissible = False
    return Polytope(fan, b, table, admissible)


@dataclass
class Certificate:
    kind: str
    b: Optional[list[Fraction]] = None
    farkas: Optional[list[Fraction]] = None
    # the strict constraint rows the Farkas vector combines: (cone, j)
    rows: list = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.kind == "feasible"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "b": [format_rat(x) for x in self.b] if self.b is not None else None,
            "farkas": [format_rat(x) for x in self.farkas] if self.farkas is not None else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        b = data.get("b")
        fk = data.get("farkas")
        return cls(data["kind"], [parse_rat(x) for x in b] if b is not None else None,
                   [parse_rat(x) for x in fk] if fk is not None else None)


def admissibility_constraints(fan: MarkedFan) -> tuple[list[list[Fraction]], list[tuple]]:
    """Rows g with g . b = <v_sigma(b), mu_j> - b_j for every cone sigma and j not in sigma."""
    G: list[list[Fraction]] = []
    labels: list[tuple] = []
    m = fan.nrays
    for c in fan.cones:
        if fan.dim == 0:
            continue
        inv = _cone_inverse(fan, c)
        cs = set(c)
        for j in range(m):
            if j in cs:
                continue
            # v = inv @ b_sigma, so <v, mu_j> = (mu_j^T inv) . b_sigma
            w = [el.dot(fan.lam[j], [inv[r][k] for r in range(fan.dim)]) for k in range(len(c))]
            row = [Fraction(0)] * m
            for k, i in enumerate(c):
                row[i] += w[k]
            row[j] -= 1
            G.append(row)
            labels.append((c, j))
    return G, labels


def polytopality(fan: MarkedFan) -> Certificate:
    """Decide whether some offsets make the polytope's normal fan equal ``fan``.

    The strict system G b > 0 is invariant under positive scaling, so it is
    equivalent to G b >= 1, which the exact simplex decides.
    """
    G, labels = admissibility_constraints(fan)
    res = solve_inequalities(G, [Fraction(1)] * len(G), fan.nrays)
    if res.feasible:
        return Certificate("feasible", b=res.x)
    y = res.farkas
    total = sum(y)
    y = [t / total for t in y]
    return Certificate("infeasible", farkas=y, rows=labels)


def check_certificate(fan: MarkedFan, cert: Certificate) -> bool:
    """Re-validate a certificate from scratch in exact arithmetic."""
    if cert.feasible:
        return cert.b is not None and build_polytope(fan, cert.b).admissible
    G, _ = admissibility_constraints(fan)
    y = cert.farkas
    if y is None or len(y) != len(G) or any(t < 0 for t in y):
        return False
    combo = [sum((y[r] * G[r][k] for r in range(len(G))), Fraction(0)) for k in range(fan.nrays)]
    # y^T (G b) >= y^T 1 would read 0 >= 1
    return all(c == 0 for c in combo) and sum(y) == 1


def _same_fan(P: Polytope, Q: Polytope) -> None:
    if P.fan != Q.fan:
        raise FanMismatch("polytopes are built over different reference fans")


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    _same_fan(P, Q)
    return build_polytope(P.fan, [x + y for x, y in zip(P.b, Q.b)])


def scale(P: Polytope, r) -> Polytope:
    r = el.to_frac(r)
    return build_polytope(P.fan, [r * x for x in P.b])


def translate(P: Polytope, y: Sequence) -> Polytope:
    """P + y, i.e. offsets b_i + <y, mu_i>."""
    y = el.vec(y)
    return build_polytope(P.fan, [bi + el.dot(y, mu) for bi, mu in zip(P.b, P.mus)])


def translation_offset(P: Polytope, Q: Polytope) -> Optional[list[Fraction]]:
    """y with P = Q + y, from <y, mu_i> = b_i - b'_i, or None if there is none."""
    _same_fan(P, Q)
    rhs = [x - y for x, y in zip(P.b, Q.b)]
    if P.dim == 0:
        return [] if not any(rhs) else None
    return el.solve([list(mu) for mu in P.mus], rhs, ncols=P.dim)


@dataclass
class MomentEmbedding:
    """x -> (<x, mu_i> - b_i)_i as ``matrix @ x + offset``, with vertex images."""

    matrix: list[list[Fraction]]
    offset: list[Fraction]
    images: dict

    def __call__(self, x: Sequence) -> list[Fraction]:
        return [a + o for a, o in zip(el.matvec(self.matrix, x), self.offset)]

    def to_json(self) -> dict:
        return {
            "matrix": [[format_rat(x) for x in row] for row in self.matrix],
            "offset": [format_rat(x) for x in self.offset],
            "images": [{"cone": list(c), "image": [format_rat(x) for x in v]}
                       for c, v in self.images.items()],
        }


def moment_embedding(P: Polytope, b_full: Sequence, extra_mus: Sequence[Sequence] = ()) -> MomentEmbedding:
    """Affine embedding into the nonnegative orthant of Q^N.

    ``b_full`` extends the offsets of ``P`` by one entry per extra normal in
    ``extra_mus``; each extra coordinate must be strictly positive on ``P``.
    """
    if not P.admissible:
        raise NotAdmissible("the polytope's offsets are not admissible")
    b_full = el.vec(b_full)
    m = P.fan.nrays
    extra = [el.vec(v) for v in extra_mus]
    if len(b_full) != m + len(extra):
        raise FanMismatch(f"expected {m + len(extra)} offsets, got {len(b_full)}")
    if tuple(b_full[:m]) != P.b:
        raise FanMismatch("first offsets must be the polytope's own")
    mus = [list(mu) for mu in P.mus] + extra
    emb = MomentEmbedding(mus, [-x for x in b_full], {})
    for c in P.fan.cones:
        img = emb(P.vertex_table[c])
        if any(t < 0 for t in img[:m]):
            raise NotAdmissible(f"vertex of cone {c} leaves the positive orthant")
        bad = [m + k for k, t in enumerate(img[m:]) if t <= 0]
        if bad:
            raise SlackViolated(f"extra coordinate {bad[0]} is not positive at the vertex of cone {c}")
        emb.images[c] = img
    return emb
