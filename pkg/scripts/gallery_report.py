"""Run every oracle over the gallery and a batch of random distortions.

    python3 scripts/gallery_report.py --random 120
"""

from __future__ import annotations

import argparse
import json
import time

from transtoric import cohomology as co
from transtoric.gallery import EXAMPLES, EXTRAS, RandomFanConfig, example, random_marked_fans
from transtoric.lift import quotient, realize
from transtoric.markedfan import are_isomorphic, validate_marked_fan
from transtoric.polytope import check_certificate, polytopality


def report(name, M) -> dict:
    t0 = time.perf_counter()
    row = {"name": name, "dim": M.dim, "rays": M.nrays, "valid": validate_marked_fan(M).in_class}
    cert = polytopality(M)
    row["polytopal"] = cert.feasible
    row["certificate_ok"] = check_certificate(M, cert)
    if cert.feasible:
        e = co.betti_by_elimination(M, cert)
        h = co.betti_by_hvector(M)
        m = co.betti_by_morse(M, cert)
        row["b"] = list(e.b)
        row["agree"] = e.b == h.b == m.b
    row["round_trip"] = are_isomorphic(quotient(realize(M)), M) is not None
    row["seconds"] = round(time.perf_counter() - t0, 3)
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=0, help="number of random distortions")
    ap.add_argument("--seed", type=int, default=RandomFanConfig.seed)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [report(n, example(n)) for n in list(EXAMPLES) + list(EXTRAS)]
    if args.random:
        cfg = RandomFanConfig(count=args.random, seed=args.seed)
        rows += [report(n, M) for n, M in random_marked_fans(cfg)]
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    for r in rows:
        print(f"{r['name']:<24} n={r['dim']} m={r['rays']:<2} polytopal={r['polytopal']!s:<5} "
              f"b={r.get('b', '-')!s:<14} agree={r.get('agree', '-')!s:<5} "
              f"round_trip={r['round_trip']} {r['seconds']}s")


if __name__ == "__main__":
    main()
