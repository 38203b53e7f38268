"""Canned marked fans and triples, plus seeded random distortions of them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import exactlin as el
from .lift import C2Triple, realize
from .markedfan import MarkedFan
from .polytope import build_polytope


class UnknownExample(KeyError):
    pass


def _std(n: int) -> list[list[int]]:
    return el.identity(n)


def point() -> MarkedFan:
    return MarkedFan.build(0, [], [], [[]])


def torus() -> MarkedFan:
    # a compact torus: every leaf is a point of the zero-dimensional fan
    return MarkedFan.build(0, [], [], [[]])


def cp1() -> MarkedFan:
    return MarkedFan.build(1, [[1]], [[1], [-1]], [[0], [1]])


def cp2() -> MarkedFan:
    return MarkedFan.build(2, _std(2), [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]])


def cp1xcp1() -> MarkedFan:
    return MarkedFan.build(2, _std(2), [[1, 0], [0, 1], [-1, 0], [0, -1]],
                           [[0, 1], [1, 2], [2, 3], [0, 3]])


def hirzebruch(a: int) -> MarkedFan:
    return MarkedFan.build(2, _std(2), [[1, 0], [0, 1], [-1, a], [0, -1]],
                           [[0, 1], [1, 2], [2, 3], [0, 3]])


def hirzebruch1() -> MarkedFan:
    return hirzebruch(1)


def octahedral() -> MarkedFan:
    lam = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    cones = [[i if si else i + 3, j if sj else j + 3, k if sk else k + 3]
             for i, j, k in [(0, 1, 2)]
             for si in (True, False) for sj in (True, False) for sk in (True, False)]
    return MarkedFan.build(3, _std(3), lam, cones)


def hopf() -> MarkedFan:
    # rational stand-in for the irrational ratio of the Hopf surface group
    return MarkedFan.build(1, [[1], [Fraction(5, 7)]], [[1], [Fraction(-5, 7)]], [[0], [1]])


def calabi_eckmann_model() -> MarkedFan:
    lam = [[1, 0], [Fraction(-3, 5), 0], [0, 1], [0, Fraction(-2, 7)]]
    return MarkedFan.build(2, lam, lam, [[0, 2], [0, 3], [1, 2], [1, 3]])


def cp3() -> MarkedFan:
    lam = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]
    cones = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
    return MarkedFan.build(3, _std(3), lam, cones)


def hexagon() -> MarkedFan:
    """Toric del Pezzo of degree 6 (CP^2 blown up at three points)."""
    lam = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]
    return MarkedFan.build(2, _std(2), lam, [[i, (i + 1) % 6] for i in range(6)])


def cp2_blown_up_twice() -> MarkedFan:
    lam = [[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]]
    return MarkedFan.build(2, _std(2), lam, [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]])


def twisted_cube() -> MarkedFan:
    """Complete simplicial fan over a triangulated cube boundary with no polytope.

    Rays are the cube's vertices; each square face is cut along one diagonal.
    The diagonal choice was found by exhaustive search over all 64 choices
    (scripts/search_nonpolytopal.py).
    """
    verts = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    idx = {v: i for i, v in enumerate(verts)}
    choice = (0, 0, 0, 1, 1, 0)
    cones = []
    k = 0
    for axis in range(3):
        for s in (-1, 1):
            a, b, c, d = cube_face_cycle(verts, axis, s)
            if choice[k] == 0:
                tris = [(a, b, c), (a, c, d)]
            else:
                tris = [(a, b, d), (b, c, d)]
            cones += [[idx[v] for v in t] for t in tris]
            k += 1
    return MarkedFan.build(3, _std(3), [list(v) for v in verts], cones)


def cube_face_cycle(verts, axis: int, s: int) -> list[tuple]:
    """Vertices of the face {x_axis = s} of the cube in cyclic order."""
    o = [a for a in range(3) if a != axis]
    face = [v for v in verts if v[axis] == s]
    return sorted(face, key=lambda v: (v[o[0]], v[o[1]] * v[o[0]]))


EXAMPLES: dict[str, Callable[[], MarkedFan]] = {
    "point": point,
    "torus": torus,
    "cp1": cp1,
    "cp2": cp2,
    "cp1xcp1": cp1xcp1,
    "hirzebruch1": hirzebruch1,
    "octahedral": octahedral,
    "hopf": hopf,
    "calabi-eckmann-model": calabi_eckmann_model,
}

# instances used by tests and scripts but kept out of the canonical gallery
EXTRAS: dict[str, Callable[[], MarkedFan]] = {
    "cp3": cp3,
    "hirzebruch2": lambda: hirzebruch(2),
    "hirzebruch3": lambda: hirzebruch(3),
    "cp2-blown-up-twice": cp2_blown_up_twice,
    "hexagon": hexagon,
    "twisted-cube": twisted_cube,
}

# even Betti numbers of the smooth projective toric varieties in the gallery
CLASSICAL_BETTI: dict[str, tuple[int, ...]] = {
    "cp1": (1, 1),
    "cp2": (1, 1, 1),
    "cp1xcp1": (1, 2, 1),
    "hirzebruch1": (1, 2, 1),
    "octahedral": (1, 3, 3, 1),
}


def torus_triple() -> C2Triple:
    """Compact complex torus C/(Z + iZ): no rays, one complex direction."""
    return C2Triple.build(2, [], [[]], [([1, 0], [0, 1])])


def hopf_triple() -> C2Triple:
    return realize(hopf())


def cp2_triple() -> C2Triple:
    return C2Triple.build(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]])


TRIPLES: dict[str, Callable[[], C2Triple]] = {
    "torus": torus_triple,
    "hopf": hopf_triple,
    "cp2": cp2_triple,
}


def example(name: str) -> MarkedFan:
    if name in EXAMPLES:
        return EXAMPLES[name]()
    if name in EXTRAS:
        return EXTRAS[name]()
    raise UnknownExample(f"unknown example {name!r}; known: {', '.join(sorted(EXAMPLES) + sorted(EXTRAS))}")


def example_triple(name: str) -> C2Triple:
    if name not in TRIPLES:
        raise UnknownExample(f"unknown triple {name!r}; known: {', '.join(sorted(TRIPLES))}")
    return TRIPLES[name]()


def polytopal_bases() -> dict[str, MarkedFan]:
    """Lattice gallery fans (all polytopal) that seed the random distortions."""
    names = ["cp1", "cp2", "cp1xcp1", "hirzebruch1", "octahedral", "cp3",
             "hirzebruch2", "hirzebruch3", "cp2-blown-up-twice", "hexagon"]
    return {n: example(n) for n in names}


@dataclass(frozen=True)
class RandomFanConfig:
    count: int = 120
    seed: int = 20170101
    max_entry: int = 2          # bound on elementary-operation multipliers
    n_elementary: int = 6
    max_scale: int = 3          # markings are multiplied by integers 1..max_scale


def random_unimodular(n: int, rng: random.Random, max_entry: int, steps: int) -> list[list[int]]:
    A = el.identity(n)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        k = rng.choice([t for t in range(-max_entry, max_entry + 1) if t])
        for r in range(n):
            A[r][i] += k * A[r][j]
    for i in range(n):
        if rng.random() < 0.5:
            for r in range(n):
                A[r][i] = -A[r][i]
    return A


def random_marked_fans(cfg: RandomFanConfig = RandomFanConfig()) -> list[tuple[str, MarkedFan]]:
    """Seeded list of (label, fan): unimodular images of base fans with scaled markings."""
    rng = random.Random(cfg.seed)
    bases = list(polytopal_bases().items())
    out = []
    for k in range(cfg.count):
        name, M = bases[k % len(bases)]
        A = random_unimodular(M.dim, rng, cfg.max_entry, cfg.n_elementary)
        scales = [rng.randint(1, cfg.max_scale) for _ in range(M.nrays)]
        lam = [[s * x for x in el.matvec(A, v)] for s, v in zip(scales, M.lam)]
        gamma = [el.matvec(A, g) for g in M.gamma]
        out.append((f"{name}#{k}", MarkedFan.build(M.dim, gamma, lam, M.cones)))
    return out


def random_admissible_offsets(M: MarkedFan, base: Sequence[Fraction], rng: random.Random,
                              tries: int = 200) -> list[Fraction]:
    """Random admissible offsets near the cone spanned by ``base`` and translations.

    Admissible offsets form an open convex cone, so a positive multiple of an
    admissible ``base`` plus a translation plus a small perturbation usually
    stays inside; candidates are re-checked and redrawn otherwise.
    """
    scale = max([abs(x) for x in base] + [Fraction(1)])
    for _ in range(tries):
        r = Fraction(rng.randint(1, 20), rng.randint(1, 5))
        y = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(M.dim)]
        eps = [Fraction(rng.randint(-10, 10), 100) * scale for _ in range(M.nrays)]
        b = [r * bi + el.dot(y, mu) + e for bi, mu, e in zip(base, M.lam, eps)]
        if build_polytope(M, b).admissible:
            return b
    raise RuntimeError("could not draw admissible offsets")
