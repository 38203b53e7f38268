"""Search the diagonal triangulations of the cube's boundary for non-polytopal fans.

Each of the six square faces is split along one of its two diagonals; the rays
are the eight cube vertices.  Every choice gives a complete simplicial fan,
and the exact LP decides polytopality.  With scipy installed the verdict is
cross-checked by a floating-point LP.

    python3 scripts/search_nonpolytopal.py
"""

from __future__ import annotations

import argparse
import itertools

from transtoric.gallery import cube_face_cycle
from transtoric.markedfan import MarkedFan, validate_marked_fan
from transtoric.polytope import admissibility_constraints, check_certificate, polytopality


def triangulated_cube(choice: tuple[int, ...]) -> MarkedFan:
    verts = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    idx = {v: i for i, v in enumerate(verts)}
    cones = []
    faces = [cube_face_cycle(verts, axis, s) for axis in range(3) for s in (-1, 1)]
    for (a, b, c, d), ch in zip(faces, choice):
        tris = [(a, b, c), (a, c, d)] if ch == 0 else [(a, b, d), (b, c, d)]
        cones += [[idx[v] for v in t] for t in tris]
    return MarkedFan.build(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [list(v) for v in verts], cones)


def float_verdict(M: MarkedFan) -> bool:
    from scipy.optimize import linprog
    G, _ = admissibility_constraints(M)
    A = [[-float(x) for x in row] for row in G]
    res = linprog([0.0] * M.nrays, A_ub=A, b_ub=[-1.0] * len(G),
                  bounds=[(None, None)] * M.nrays, method="highs")
    return res.status == 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--no-scipy", action="store_true")
    args = ap.parse_args()
    hits = []
    for choice in itertools.product((0, 1), repeat=6):
        M = triangulated_cube(choice)
        if not validate_marked_fan(M).in_class:
            print(choice, "not a complete simplicial fan")
            continue
        cert = polytopality(M)
        line = f"{choice} feasible={cert.feasible} certificate_ok={check_certificate(M, cert)}"
        if not args.no_scipy:
            line += f" float_lp_feasible={float_verdict(M)}"
        print(line)
        if not cert.feasible:
            hits.append(choice)
    print(f"{len(hits)} of 64 triangulations are not polytopal; first: {hits[0] if hits else None}")


if __name__ == "__main__":
    main()
