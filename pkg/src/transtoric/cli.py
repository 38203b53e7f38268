"""Command-line front end.

Exit codes: 0 success, 1 unreadable input, 2 validation failure,
3 not polytopal, 4 Betti oracles disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from . import cohomology as co
from . import polytope as pt
from .fan import DEFAULT_SEED
from .gallery import UnknownExample, example, example_triple
from .lift import (C2Triple, DimensionMismatch, NotInClass, check_principal, quotient, realize,
                   validate_triple)
from .markedfan import (MarkedFan, NotValidated, ParseError, SchemaError, are_isomorphic,
                        format_rat, parse_rat, validate_marked_fan)

COMMANDS = ("validate", "realize", "quotient", "iso", "betti", "hodge", "polytopality",
            "minkowski", "translate", "example", "principal")
METHODS = ("elimination", "hvector", "morse", "all")

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_NOT_POLYTOPAL, EXIT_DISAGREE = 0, 1, 2, 3, 4


@dataclass
class JobSpec:
    command: str
    inputs: list[str] = field(default_factory=list)
    examples: list[str] = field(default_factory=list)
    triple_examples: list[str] = field(default_factory=list)
    method: str = "all"
    seed: int = DEFAULT_SEED
    fmt: str = "json"
    unchecked: bool = False
    offsets: list[str] = field(default_factory=list)
    translation: Optional[str] = None
    scale: Optional[str] = None
    extra_gens: Optional[str] = None
    dalpha: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise SchemaError(f"unknown command {self.command!r}")
        if self.method not in METHODS:
            raise SchemaError(f"unknown method {self.method!r}")


class ValidationFailure(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("diagnostics"))
        self.report = report


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def load_instance(path: str):
    with open(path, encoding="utf-8") as fh:
        data = _load_json(fh.read(), path)
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top-level JSON value must be an object")
    if "N" in data:
        return C2Triple.from_json(data)
    return MarkedFan.from_json(data)


def _rat_list(text: str, what: str) -> list:
    data = _load_json(text, what)
    if not isinstance(data, list):
        raise SchemaError(f"{what} must be a JSON list")
    return [parse_rat(x) for x in data]


def _rat_matrix(text: str, what: str) -> list[list]:
    data = _load_json(text, what)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError(f"{what} must be a JSON list of lists")
    return [[parse_rat(x) for x in row] for row in data]


def _instances(spec: JobSpec) -> list:
    out = [load_instance(p) for p in spec.inputs]
    out += [example(n) for n in spec.examples]
    out += [example_triple(n) for n in spec.triple_examples]
    return out


def _need(items: list, k: int, what: str) -> None:
    if len(items) != k:
        raise SchemaError(f"expected {k} {what}, got {len(items)}")


def _marked(x) -> MarkedFan:
    if isinstance(x, MarkedFan):
        return x
    raise SchemaError("this command needs a marked fan, not a triple")


def _triple(x) -> C2Triple:
    if isinstance(x, C2Triple):
        return x
    raise SchemaError("this command needs a C2 triple, not a marked fan")


def _require_valid(M: MarkedFan, seed: int) -> None:
    rep = validate_marked_fan(M, seed)
    if not rep.in_class:
        raise ValidationFailure({"kind": "marked_fan", "flags": rep.flags(),
                                 "diagnostics": rep.diagnostics})


def cmd_validate(x, spec: JobSpec) -> tuple[int, dict]:
    if isinstance(x, C2Triple):
        rep = validate_triple(x, spec.seed)
        ok, kind = rep.ok, "triple"
    else:
        rep = validate_marked_fan(x, spec.seed)
        ok, kind = rep.in_class, "marked_fan"
    report = {"kind": kind, "flags": rep.flags(), "valid": ok, "diagnostics": rep.diagnostics}
    return (EXIT_OK if ok else EXIT_INVALID), report


def cmd_realize(x, spec: JobSpec) -> tuple[int, dict]:
    M = _marked(x)
    extra = _rat_matrix(spec.extra_gens, "--extra-gens") if spec.extra_gens else None
    return EXIT_OK, realize(M, extra, spec.seed).to_json()


def cmd_quotient(x, spec: JobSpec) -> tuple[int, dict]:
    return EXIT_OK, quotient(_triple(x), seed=spec.seed).to_json()


def _betti(M: MarkedFan, spec: JobSpec) -> dict[str, co.BettiVector]:
    methods = ("elimination", "hvector", "morse") if spec.method == "all" else (spec.method,)
    _require_valid(M, spec.seed)
    if spec.unchecked:
        # skip the polytopality requirement; the Morse count needs a polytope
        out: dict[str, co.BettiVector] = {}
        h = co.betti_by_hvector(M, check=False)
        for m in methods:
            if m == "hvector":
                out[m] = h
            elif m == "elimination":
                dims = co.quotient_dimensions(M)
                out[m] = co.BettiVector(M.dim, tuple(dims[:-1]), h.h)
            else:
                raise co.NotPolytopal("the Morse count needs a polytope; drop --unchecked")
        return out
    cert = pt.polytopality(M)
    if not cert.feasible:
        raise co.NotPolytopal("no admissible offsets exist: the fan is not polytopal")
    out = {}
    for m in methods:
        if m == "elimination":
            out[m] = co.betti_by_elimination(M, cert, check=False)
        elif m == "hvector":
            out[m] = co.betti_by_hvector(M, check=False, cert=cert)
        else:
            out[m] = co.betti_by_morse(M, cert, check=False, seed=spec.seed)
    return out


def cmd_betti(x, spec: JobSpec) -> tuple[int, dict]:
    M = _marked(x)
    results = _betti(M, spec)
    first = next(iter(results.values()))
    agree = all(r.b == first.b for r in results.values())
    report = {
        "method": spec.method,
        "results": {k: list(v.b) for k, v in results.items()},
        "b": list(first.b),
        "h": list(first.h),
        "agreement": agree,
    }
    if agree and not spec.unchecked:
        report["hodge"] = co.hodge_diamond(first)
    return (EXIT_OK if agree else EXIT_DISAGREE), report


def cmd_hodge(x, spec: JobSpec) -> tuple[int, dict]:
    # the diagonal Hodge table rests on a transverse Kahler form, so a polytope is required
    code, rep = cmd_betti(x, replace(spec, unchecked=False))
    if code != EXIT_OK:
        return code, rep
    return EXIT_OK, {"hodge": rep["hodge"], "b": rep["b"]}


def cmd_polytopality(x, spec: JobSpec) -> tuple[int, dict]:
    M = _marked(x)
    _require_valid(M, spec.seed)
    cert = pt.polytopality(M)
    report = cert.to_json()
    report["verified"] = pt.check_certificate(M, cert)
    if cert.feasible:
        report["vertices"] = pt.build_polytope(M, cert.b).to_json()["vertices"]
    return EXIT_OK, report


def _polytope_from(M: MarkedFan, text: str, what: str) -> pt.Polytope:
    return pt.build_polytope(M, _rat_list(text, what))


def cmd_minkowski(spec: JobSpec) -> tuple[int, dict]:
    insts = _instances(spec)
    _need(insts, 1, "fan inputs")
    M = _marked(insts[0])
    _require_valid(M, spec.seed)
    if spec.scale is not None:
        _need(spec.offsets, 1, "--offsets values")
        r = parse_rat(spec.scale)
        if r <= 0:
            raise SchemaError("--scale must be positive")
        P = pt.scale(_polytope_from(M, spec.offsets[0], "--offsets"), r)
        return EXIT_OK, P.to_json()
    _need(spec.offsets, 2, "--offsets values")
    P = _polytope_from(M, spec.offsets[0], "--offsets")
    Q = _polytope_from(M, spec.offsets[1], "--offsets")
    return EXIT_OK, pt.minkowski_sum(P, Q).to_json()


def cmd_translate(spec: JobSpec) -> tuple[int, dict]:
    insts = _instances(spec)
    _need(insts, 1, "fan inputs")
    M = _marked(insts[0])
    _require_valid(M, spec.seed)
    if spec.translation is not None:
        _need(spec.offsets, 1, "--offsets values")
        P = _polytope_from(M, spec.offsets[0], "--offsets")
        return EXIT_OK, pt.translate(P, _rat_list(spec.translation, "--by")).to_json()
    _need(spec.offsets, 2, "--offsets values")
    P = _polytope_from(M, spec.offsets[0], "--offsets")
    Q = _polytope_from(M, spec.offsets[1], "--offsets")
    y = pt.translation_offset(P, Q)
    return EXIT_OK, {"translate": y is not None,
                     "y": [format_rat(t) for t in y] if y is not None else None}


def cmd_iso(spec: JobSpec) -> tuple[int, dict]:
    insts = _instances(spec)
    _need(insts, 2, "marked fans")
    M1, M2 = (_marked(x) for x in insts)
    _require_valid(M1, spec.seed)
    _require_valid(M2, spec.seed)
    iso = are_isomorphic(M1, M2, validate=False)
    return EXIT_OK, {"isomorphic": iso is not None,
                     "witness": iso.to_json() if iso is not None else None}


def cmd_example(spec: JobSpec) -> tuple[int, dict]:
    insts = _instances(spec)
    _need(insts, 1, "example names")
    return EXIT_OK, insts[0].to_json()


def cmd_principal(spec: JobSpec) -> tuple[int, dict]:
    insts = _instances(spec)
    _need(insts, 2, "triples (source, target)")
    T0, T = (_triple(x) for x in insts)
    if spec.dalpha is None:
        raise SchemaError("principal needs --dalpha")
    D = _rat_matrix(spec.dalpha, "--dalpha")
    if any(v.denominator != 1 for row in D for v in row):
        raise SchemaError("--dalpha must have integer entries")
    rep = check_principal(D, T0, T)
    return EXIT_OK, {"flags": rep.flags(), "diagnostics": rep.diagnostics}


# commands taking one instance; several inputs run as an independent batch
SINGLE = {
    "validate": cmd_validate, "realize": cmd_realize, "quotient": cmd_quotient,
    "betti": cmd_betti, "hodge": cmd_hodge, "polytopality": cmd_polytopality,
}
MULTI = {
    "iso": cmd_iso, "minkowski": cmd_minkowski, "translate": cmd_translate,
    "example": cmd_example, "principal": cmd_principal,
}


def _guard(fn, *args) -> tuple[int, dict]:
    try:
        return fn(*args)
    except (ParseError, SchemaError, UnknownExample, DimensionMismatch, OSError) as exc:
        name = type(exc).__name__
        msg = exc.args[0] if exc.args and isinstance(exc.args[0], str) else str(exc)
        return EXIT_PARSE, {"error": name, "message": msg}
    except ValidationFailure as exc:
        return EXIT_INVALID, {"error": "ValidationFailure", **exc.report}
    except (NotValidated, NotInClass, pt.NotAdmissible, pt.FanMismatch,
            pt.SingularVertexSystem, co.LsopFailure) as exc:
        return EXIT_INVALID, {"error": type(exc).__name__, "diagnostics": [str(exc)]}
    except co.NotPolytopal as exc:
        return EXIT_NOT_POLYTOPAL, {"error": "NotPolytopal", "message": str(exc)}


def _run_one_input(args: tuple[str, JobSpec]) -> tuple[int, dict]:
    path, spec = args
    return _guard(lambda: SINGLE[spec.command](load_instance(path), spec))


def run(spec: JobSpec, jobs: int = 1) -> tuple[int, object]:
    """Execute a job; returns (exit code, JSON-ready report)."""
    if spec.command in MULTI:
        return _guard(MULTI[spec.command], spec)
    n_inputs = len(spec.inputs) + len(spec.examples) + len(spec.triple_examples)
    if n_inputs == 0:
        return EXIT_PARSE, {"error": "SchemaError", "message": f"{spec.command} needs an input"}
    if n_inputs == 1:
        def single():
            return SINGLE[spec.command](_instances(spec)[0], spec)
        return _guard(single)

    # batch: independent inputs, results in input order
    results: list[tuple[int, dict]] = []
    tasks = [(p, spec) for p in spec.inputs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results += list(pool.map(_run_one_input, tasks))
    else:
        results += [_run_one_input(t) for t in tasks]
    for name in spec.examples:
        results.append(_guard(lambda n=name: SINGLE[spec.command](example(n), spec)))
    for name in spec.triple_examples:
        results.append(_guard(lambda n=name: SINGLE[spec.command](example_triple(n), spec)))
    labels = spec.inputs + spec.examples + [f"triple:{n}" for n in spec.triple_examples]
    code = max(c for c, _ in results)
    return code, [{"input": lab, "exit": c, "report": r} for lab, (c, r) in zip(labels, results)]


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def _flatten(prefix: str, value, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list) and value and all(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, json.dumps(value, ensure_ascii=False)))


def format_text(report) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", report, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transtoric", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="JSON files (marked fans or C2 triples)")
    p.add_argument("--example", action="append", default=[], dest="examples",
                   help="use a gallery marked fan (repeatable)")
    p.add_argument("--triple-example", action="append", default=[], dest="triple_examples",
                   help="use a gallery C2 triple (repeatable)")
    p.add_argument("--method", choices=METHODS, default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("json", "text"), default="json", dest="fmt")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch inputs")
    p.add_argument("--unchecked", action="store_true",
                   help="betti/hodge: skip the polytopality requirement")
    p.add_argument("--offsets", action="append", default=[],
                   help='offset vector as a JSON list, e.g. \'["1","2/3",0]\' (repeatable)')
    p.add_argument("--by", dest="translation", help="translate: vector y as a JSON list")
    p.add_argument("--scale", help="minkowski: dilate a single polytope by this rational")
    p.add_argument("--extra-gens", help="realize: extra group generators as a JSON list of vectors")
    p.add_argument("--dalpha", help="principal: integer matrix as a JSON list of rows")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    spec = JobSpec(
        command=args.command, inputs=args.inputs, examples=args.examples,
        triple_examples=args.triple_examples, method=args.method, seed=args.seed,
        fmt=args.fmt, unchecked=args.unchecked, offsets=args.offsets,
        translation=args.translation, scale=args.scale, extra_gens=args.extra_gens,
        dalpha=args.dalpha,
    )
    code, report = run(spec, jobs=args.jobs)
    out = format_text(report) if spec.fmt == "text" else dumps(report)
    sys.stdout.write(out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
