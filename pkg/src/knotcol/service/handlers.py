"""Shared request handlers behind both the HTTP endpoints and the CLI."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor

from .. import alexander, quandle as quandle_mod
from ..coloring import (Budget, BudgetExceeded, color_backtrack, color_braid,
                        color_brute, colorable, count_colorings, decode_model,
                        encode_cnf)
from ..knotio import (KnotFormatError, parse_braid, parse_dt, parse_gauss,
                      braid_to_diagram, torus_braid)
from ..recognize import (Exhausted, KnottednessCertificate, affine_prefilter,
                         certify_knotted, distinguish)
from ..sat import emit_dimacs, sat_decide, solve_external
from .schemas import (BenchResponse, BenchRow, CertifyResponse, ColorResponse,
                      DistinguishResponse, EncodeResponse)

LIBRARY_PATH_ENV = "KNOTCOL_LIBRARY"


def resolve_knot(spec):
    """Returns (diagram, braid_word_or_None)."""
    if spec.gauss is not None:
        return parse_gauss(spec.gauss, name=spec.name), None
    if spec.braid is not None:
        braid = parse_braid(spec.braid)
        return braid_to_diagram(braid, name=spec.name), braid
    if spec.torus is not None:
        try:
            p, q = (int(x) for x in spec.torus.split(","))
        except ValueError:
            raise KnotFormatError(f"bad torus spec {spec.torus!r}") from None
        braid = torus_braid(p, q)
        return braid_to_diagram(braid, name=spec.name or f"torus({p},{q})"), braid
    return parse_dt(spec.dt, name=spec.name), None


def resolve_quandle(text):
    """Builtin quandle specs: dihedral:<n>, affine:<n>,<t>, conj:<group>,<rep>."""
    family, _, args = text.partition(":")
    try:
        if family == "dihedral":
            return quandle_mod.dihedral(int(args))
        if family == "affine":
            n, t = (int(x) for x in args.split(","))
            return quandle_mod.affine(n, t)
        if family == "conj":
            gname, rep = args.split(",")
            table = quandle_mod.BUILTIN_GROUPS[gname]()
            return quandle_mod.conjugation(table, int(rep),
                                           name=f"conj({gname},{rep})")
    except (ValueError, KeyError) as exc:
        raise ValueError(f"bad quandle spec {text!r}: {exc}") from None
    raise ValueError(f"unknown quandle family {family!r}")


def resolve_library(spec):
    if spec.path:
        quandles = quandle_mod.library_load(spec.path)
    else:
        groups = [(name, quandle_mod.BUILTIN_GROUPS[name]()) for name in spec.groups]
        quandles = quandle_mod.library_generate(quandle_mod.LibrarySpec(
            dihedral_prime_max=spec.dihedral_prime_max,
            affine_max=spec.affine_max,
            groups=groups,
        ))
    if not quandles:
        raise ValueError("library is empty")
    return quandles


def default_library_path():
    return os.environ.get(LIBRARY_PATH_ENV)


def _budget(spec):
    return Budget(max_assignments=spec.max_assignments,
                  max_nodes=spec.max_nodes,
                  max_seconds=spec.max_seconds)


def _knot_label(spec, diagram):
    return spec.name or diagram.name or (
        spec.gauss or spec.braid or (f"torus({spec.torus})" if spec.torus else None)
        or f"dt({spec.dt})")


def handle_color(req):
    diagram, braid = resolve_knot(req.knot)
    quandle = resolve_quandle(req.quandle)
    budget = _budget(req.budget)
    mode = "count" if req.count else "decide"
    started = time.perf_counter()
    status = "ok"
    result = None
    try:
        if req.engine == "brute":
            result = color_brute(diagram, quandle, mode=mode, budget=budget)
        elif req.engine == "backtrack":
            result = color_backtrack(diagram, quandle, mode=mode, budget=budget)
        elif req.engine == "braid":
            if braid is None:
                raise ValueError("engine 'braid' requires a braid or torus input")
            result = color_braid(braid, quandle, mode=mode, budget=budget)
        elif req.engine == "sat":
            if req.count:
                result = count_colorings(diagram, quandle, budget=budget)
            else:
                result = colorable(diagram, quandle)
        elif req.engine.startswith("external:"):
            instance = encode_cnf(diagram, quandle,
                                  symmetry_break=quandle.is_connected,
                                  nontrivial=True)
            model = solve_external(instance, req.engine.split(":", 1)[1])
            if req.count:
                raise ValueError("external engine only decides, it cannot count")
            result = model is not None
        else:
            raise ValueError(f"unknown engine {req.engine!r}")
    except BudgetExceeded:
        status = "budget-exceeded"
    millis = (time.perf_counter() - started) * 1000
    if status == "ok" and req.check:
        oracle = color_brute(diagram, quandle, mode=mode)
        if oracle != result:
            raise AssertionError(
                f"engine {req.engine} disagrees with brute force: {result} vs {oracle}")
    resp = ColorResponse(
        knot=_knot_label(req.knot, diagram),
        quandle=quandle.name or req.quandle,
        engine=req.engine,
        millis=millis,
        status=status,
    )
    if status == "ok":
        if req.count:
            resp.count = result
            resp.colorable = result > 0
        else:
            resp.colorable = bool(result)
    return resp


def handle_encode(req):
    diagram, _ = resolve_knot(req.knot)
    quandle = resolve_quandle(req.quandle)
    instance = encode_cnf(diagram, quandle,
                          symmetry_break=req.symmetry_break,
                          nontrivial=req.nontrivial)
    return EncodeResponse(
        num_vars=instance.num_vars,
        num_clauses=len(instance.clauses),
        dimacs=emit_dimacs(instance),
    )


def handle_certify(req):
    diagram, _ = resolve_knot(req.knot)
    library = resolve_library(req.library)
    if req.prefilter:
        library = affine_prefilter(diagram, library)
    started = time.perf_counter()
    if library:
        outcome = certify_knotted(diagram, library, budget=_budget(req.budget))
    else:
        outcome = Exhausted(diagram.name or "?", [])
    millis = (time.perf_counter() - started) * 1000
    if isinstance(outcome, KnottednessCertificate):
        return CertifyResponse(verdict="certificate",
                               detail=json.loads(outcome.to_json()),
                               millis=millis)
    return CertifyResponse(verdict="exhausted",
                           detail=json.loads(outcome.to_json()),
                           millis=millis)


def handle_distinguish(req):
    diagram1, _ = resolve_knot(req.knot1)
    diagram2, _ = resolve_knot(req.knot2)
    library = resolve_library(req.library)
    started = time.perf_counter()
    witness = distinguish(diagram1, diagram2, library,
                          count=req.count, budget=_budget(req.budget))
    millis = (time.perf_counter() - started) * 1000
    detail = json.loads(witness.to_json())
    verdict = ("indistinguishable"
               if detail.get("verdict") == "indistinguishable" else "witness")
    return DistinguishResponse(verdict=verdict, detail=detail, millis=millis)


def handle_bench(req):
    library = resolve_library(req.library)
    jobs = []
    for knot_spec in req.knots:
        for quandle in library:
            jobs.append((knot_spec, quandle))

    def run(job):
        knot_spec, quandle = job
        started = time.perf_counter()
        status, verdict, label = "ok", "", None
        try:
            diagram, braid = resolve_knot(knot_spec)
            label = _knot_label(knot_spec, diagram)
            budget = _budget(req.budget)
            if req.engine == "brute":
                result = color_brute(diagram, quandle, mode="decide", budget=budget)
            elif req.engine == "backtrack":
                result = color_backtrack(diagram, quandle, mode="decide", budget=budget)
            elif req.engine == "braid":
                if braid is None:
                    raise ValueError("engine 'braid' requires a braid or torus input")
                result = color_braid(braid, quandle, mode="decide", budget=budget)
            elif req.engine == "sat":
                result = colorable(diagram, quandle)
            else:
                raise ValueError(f"unknown engine {req.engine!r}")
            verdict = "colorable" if result else "uncolorable"
        except BudgetExceeded:
            status = "budget-exceeded"
        millis = (time.perf_counter() - started) * 1000
        return BenchRow(
            knot=label or knot_spec.name or knot_spec.gauss or knot_spec.braid
            or knot_spec.torus or knot_spec.dt,
            quandle=quandle.name or f"q{quandle.size}",
            size=quandle.size,
            engine=req.engine,
            verdict=verdict,
            millis=millis,
            status=status,
        )

    if req.jobs > 1:
        with ThreadPoolExecutor(max_workers=req.jobs) as pool:
            rows = list(pool.map(run, jobs))  # map keeps input order
    else:
        rows = [run(job) for job in jobs]
    return BenchResponse(rows=rows)


def bench_csv(resp):
    lines = ["knot,quandle,size,engine,verdict,millis,status"]
    for row in resp.rows:
        lines.append(f"{row.knot},{row.quandle},{row.size},{row.engine},"
                     f"{row.verdict},{row.millis:.3f},{row.status}")
    return "\n".join(lines) + "\n"
