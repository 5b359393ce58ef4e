"""Command-line front end; a thin client over the service handlers.

Exit codes: 0 = verdict/certificate/witness found, 10 = exhausted or
indistinguishable, 3 = budget exceeded, 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coloring import BudgetExceeded
from .knotio import KnotFormatError
from .service import handlers
from .service.schemas import (BenchRequest, BudgetSpec, CertifyRequest,
                              ColorRequest, DistinguishRequest, EncodeRequest,
                              KnotSpec, LibrarySpec)

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_BUDGET = 3
EXIT_EXHAUSTED = 10


def _add_knot_args(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--gauss", help="signed Gauss code, e.g. 'O1+ U2+ O3+ U1+ O2+ U3+'")
    group.add_argument("--braid", help="braid word, e.g. '2: 1 1 1'")
    group.add_argument("--torus", help="torus knot 'p,q', e.g. '2,3'")
    group.add_argument("--dt", help="DT code, e.g. '4 6 2'")
    parser.add_argument("--name", help="label for output")


def _add_budget_args(parser):
    parser.add_argument("--max-assignments", type=int, default=10 ** 8)
    parser.add_argument("--max-nodes", type=int, default=None)
    parser.add_argument("--max-seconds", type=float, default=None)


def _knot_spec(args):
    return KnotSpec(gauss=args.gauss, braid=args.braid, torus=args.torus,
                    dt=args.dt, name=args.name)


def _knot_spec_from_string(text):
    """Parse 'gauss:...', 'braid:...', 'torus:p,q' or 'dt:...'."""
    kind, _, value = text.partition(":")
    if kind not in ("gauss", "braid", "torus", "dt") or not value:
        raise KnotFormatError(
            f"knot spec {text!r} must look like gauss:..., braid:..., torus:p,q or dt:...")
    return KnotSpec(**{kind: value.strip()})


def _budget_spec(args):
    return BudgetSpec(max_assignments=args.max_assignments,
                      max_nodes=args.max_nodes,
                      max_seconds=args.max_seconds)


def _library_spec(text):
    """A file path, or 'gen:dihedral=7,affine=6,groups=s3+s4'."""
    if text is None:
        text = handlers.default_library_path()
    if text is None:
        raise ValueError(
            "no library given (use --library or set $" + handlers.LIBRARY_PATH_ENV + ")")
    if not text.startswith("gen:"):
        return LibrarySpec(path=text)
    fields = {}
    for part in text[4:].split(","):
        if not part:
            continue
        key, _, value = part.partition("=")
        if key == "dihedral":
            fields["dihedral_prime_max"] = int(value)
        elif key == "affine":
            fields["affine_max"] = int(value)
        elif key == "groups":
            fields["groups"] = value.split("+")
        else:
            raise ValueError(f"unknown library recipe field {key!r}")
    return LibrarySpec(**fields)


def _emit(args, payload):
    if getattr(args, "output_format", "json") == "json":
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _cmd_color(args, count):
    req = ColorRequest(knot=_knot_spec(args), quandle=args.quandle,
                       engine=args.engine, count=count, check=args.check,
                       budget=_budget_spec(args))
    resp = handlers.handle_color(req)
    _emit(args, resp.model_dump(exclude_none=True))
    return EXIT_BUDGET if resp.status == "budget-exceeded" else EXIT_OK


def _cmd_encode(args):
    req = EncodeRequest(knot=_knot_spec(args), quandle=args.quandle,
                        symmetry_break=not args.no_sb,
                        nontrivial=not args.no_nontrivial)
    resp = handlers.handle_encode(req)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(resp.dimacs)
        print(f"wrote {resp.num_vars} vars, {resp.num_clauses} clauses to {args.output}")
    else:
        sys.stdout.write(resp.dimacs)
    return EXIT_OK


def _cmd_certify(args):
    req = CertifyRequest(knot=_knot_spec(args), library=_library_spec(args.library),
                         prefilter=args.prefilter, budget=_budget_spec(args))
    resp = handlers.handle_certify(req)
    _emit(args, resp.model_dump())
    return EXIT_OK if resp.verdict == "certificate" else EXIT_EXHAUSTED


def _cmd_distinguish(args):
    req = DistinguishRequest(knot1=_knot_spec_from_string(args.knot1),
                             knot2=_knot_spec_from_string(args.knot2),
                             library=_library_spec(args.library),
                             count=args.count, budget=_budget_spec(args))
    resp = handlers.handle_distinguish(req)
    _emit(args, resp.model_dump())
    return EXIT_OK if resp.verdict == "witness" else EXIT_EXHAUSTED


def _cmd_bench(args):
    req = BenchRequest(knots=[_knot_spec_from_string(k) for k in args.knots],
                       library=_library_spec(args.library),
                       engine=args.engine, budget=_budget_spec(args),
                       jobs=args.jobs)
    resp = handlers.handle_bench(req)
    text = handlers.bench_csv(resp)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_serve(args):
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="knotcol",
        description="Quandle colorings of knot diagrams and knottedness certificates")
    parser.add_argument("--format", dest="output_format", choices=("json", "text"),
                        default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, count in (("color", False), ("count", True)):
        p = sub.add_parser(name, help=f"{'count' if count else 'decide'} nontrivial colorings")
        _add_knot_args(p)
        p.add_argument("--quandle", required=True,
                       help="dihedral:<n> | affine:<n>,<t> | conj:<group>,<rep>")
        p.add_argument("--engine", default="sat",
                       help="brute | backtrack | braid | sat | external:<path>")
        p.add_argument("--check", action="store_true",
                       help="cross-check the result against brute force")
        _add_budget_args(p)
        p.set_defaults(func=lambda a, c=count: _cmd_color(a, c))

    p = sub.add_parser("encode", help="emit the DIMACS CNF encoding")
    _add_knot_args(p)
    p.add_argument("--quandle", required=True)
    p.add_argument("--no-sb", action="store_true", help="drop the symmetry-breaking unit")
    p.add_argument("--no-nontrivial", action="store_true",
                   help="drop the nontriviality clauses")
    p.add_argument("-o", "--output", help="write DIMACS to a file")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("certify", help="search the library for a knottedness certificate")
    _add_knot_args(p)
    p.add_argument("--library", help="library file or gen:dihedral=7,affine=6,groups=s3")
    p.add_argument("--prefilter", action="store_true",
                   help="drop affine quandles when the Alexander polynomial is trivial")
    _add_budget_args(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("distinguish", help="find an inequivalence witness for two knots")
    p.add_argument("knot1", help="e.g. torus:2,3 or 'gauss:O1+ U2+ ...'")
    p.add_argument("knot2")
    p.add_argument("--library")
    p.add_argument("--count", action="store_true",
                   help="also compare coloring counts, not just colorability")
    _add_budget_args(p)
    p.set_defaults(func=_cmd_distinguish)

    p = sub.add_parser("bench", help="colorability matrix as CSV")
    p.add_argument("--knots", nargs="+", required=True,
                   help="knot specs, e.g. torus:2,11 torus:2,21")
    p.add_argument("--library")
    p.add_argument("--engine", default="sat")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", help="write CSV to a file")
    _add_budget_args(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (KnotFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
