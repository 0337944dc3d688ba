"""Command-line surface.

Every subcommand prints a single JSON document on stdout and writes file
artifacts only where an output path was given. Exit codes: 0 for a computed
result (including a non-arrowing verdict), 2 for usage errors, 3 for input
errors, 10 for undecided-within-budget, 11 for infeasible generation. With
``--no-timing`` the stdout payload carries no timing or effort fields, so
identical inputs, flags, and seeds give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import cnf as cnfmod
from .arrowing import (
    Outcome,
    SearchOptions,
    arrows,
    ramsey_number,
    read_colouring,
    write_colouring,
)
from .errors import FormatError, InfeasibleError, InputError, Undecided
from .focusing import FocusFailure, iterated_focus, report_to_json, verify_focus_report
from .formats import graph6_decode, graph6_encode, read_edge_list, write_hypergraph
from .gadgets import (
    blockgraph_from_json,
    blockgraph_to_json,
    build_g0,
    build_pendant_gadget,
    build_product,
    canonical_colouring,
    colouring_checks,
    gen_hypergraph,
    schedule_params,
)
from .minimal import degree_survey, distinguish, is_minimal, minimalize
from .patterns import Clique, parse_pattern, pattern_text

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_UNDECIDED = 10
EXIT_INFEASIBLE = 11

BUDGET_ENV = "RAMSEYKIT_BUDGET"


def _load_graph(path: str):
    """Read a graph file: edge-list when it starts with an 'n ' header,
    otherwise graph6."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("n "):
        return read_edge_list(text)
    for line in text.splitlines():
        if line.strip():
            return graph6_decode(line.strip())
    raise InputError(f"no graph found in {path}")


def _pattern(text: str):
    return parse_pattern(text, read_graph6=_load_graph)


def _options(args) -> SearchOptions:
    budget = getattr(args, "budget", None)
    if budget is None and os.environ.get(BUDGET_ENV):
        budget = float(os.environ[BUDGET_ENV])
    return SearchOptions(
        max_nodes=getattr(args, "max_nodes", None),
        max_seconds=budget,
        workers=getattr(args, "workers", 1),
    )


def _emit(payload: dict, args) -> None:
    if getattr(args, "no_timing", False):
        payload = {k: v for k, v in payload.items() if k not in ("seconds", "nodes")}
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _verdict_payload(verdict) -> dict:
    return {
        "result": verdict.outcome.value,
        "nodes": verdict.nodes,
        "seconds": round(verdict.seconds, 3),
    }


# -- subcommand handlers ------------------------------------------------------


def _cmd_arrow(args) -> int:
    g = _load_graph(args.graph)
    red = _pattern(args.red)
    blue = _pattern(args.blue)
    verdict = arrows(g, red, blue, _options(args))
    payload = _verdict_payload(verdict)
    if verdict.witness is not None and args.witness:
        Path(args.witness).write_text(write_colouring(verdict.witness))
        payload["witness_file"] = args.witness
    elif verdict.witness is not None:
        payload["witness"] = write_colouring(verdict.witness).splitlines()
    _emit(payload, args)
    return EXIT_UNDECIDED if verdict.outcome is Outcome.UNDECIDED else EXIT_OK


def _cmd_ramsey(args) -> int:
    red = _pattern(args.red)
    blue = _pattern(args.blue)
    report = ramsey_number(red, blue, _options(args))
    payload = {
        "red": pattern_text(red),
        "blue": pattern_text(blue),
        "n": report.n,
        "decided": report.decided,
        "checked_up_to": report.checked_up_to,
        "nodes": report.nodes,
    }
    _emit(payload, args)
    return EXIT_OK if report.decided else EXIT_UNDECIDED


def _cmd_minimal(args) -> int:
    g = _load_graph(args.graph)
    p = _pattern(args.pattern)
    opts = _options(args)
    report = is_minimal(g, p, opts)
    payload = {
        "pattern": pattern_text(p),
        "decided": report.decided,
        "is_ramsey": report.is_ramsey,
        "is_minimal": report.is_minimal,
        "failing_edge": list(report.failing_edge) if report.failing_edge else None,
        "isolated_vertices": list(report.isolated_vertices),
    }
    if args.minimalize and report.decided and report.is_ramsey:
        reduced = minimalize(g, p, opts)
        payload["minimalized_graph6"] = graph6_encode(reduced)
    _emit(payload, args)
    return EXIT_OK if report.decided else EXIT_UNDECIDED


def _cmd_survey(args) -> int:
    p = _pattern(args.pattern)
    graphs = None
    if args.graphs:
        lines = Path(args.graphs).read_text().splitlines()
        graphs = [graph6_decode(ln.strip()) for ln in lines if ln.strip()]
    survey = degree_survey(
        p,
        args.nmax,
        max_seconds=args.budget,
        opts=_options(args),
        graphs=graphs,
        r_value=args.r_value,
    )
    for line in survey.iter_json_lines():
        print(line)
    return EXIT_OK if survey.complete else EXIT_UNDECIDED


def _cmd_distinguish(args) -> int:
    h1 = _pattern(args.h1)
    h2 = _pattern(args.h2)
    report = distinguish(
        h1, h2, args.nmax, max_seconds=args.budget, opts=_options(args)
    )
    payload = {
        "h1": pattern_text(h1),
        "h2": pattern_text(h2),
        "found": report.graph is not None,
        "graph6": graph6_encode(report.graph) if report.graph else None,
        "complete": report.complete,
        "graphs_checked": report.graphs_checked,
    }
    _emit(payload, args)
    return EXIT_OK


def _write_blockgraph(bg, out: str, payload: dict, args) -> int:
    Path(out).write_text(blockgraph_to_json(bg))
    g6path = out[:-5] + ".g6" if out.endswith(".json") else out + ".g6"
    Path(g6path).write_text(graph6_encode(bg.graph) + "\n")
    payload.update(
        {
            "out": out,
            "graph6_file": g6path,
            "vertices": bg.graph.n,
            "edges": bg.graph.num_edges,
        }
    )
    _emit(payload, args)
    return EXIT_OK


def _cmd_gadget(args) -> int:
    if args.kind == "g0":
        seed_block = _load_graph(args.block) if args.block else None
        bg = build_g0(args.k, seed_block)
        return _write_blockgraph(bg, args.out, {"gadget": "g0", "k": args.k}, args)
    if args.kind == "pendant":
        seed_block = _load_graph(args.block) if args.block else None
        copies = [build_g0(args.k, seed_block) for _ in range(args.k - 1)]
        bg = build_pendant_gadget(args.k, copies)
        return _write_blockgraph(bg, args.out, {"gadget": "pendant", "k": args.k}, args)
    if args.kind == "product":
        g0 = _load_graph(args.g0)
        fs = [_load_graph(path) for path in args.blocks]
        r_value = args.r_value
        r_source = "supplied"
        if r_value is None:
            rep = ramsey_number(Clique(args.k), Clique(args.k - args.t + 1), _options(args))
            if not rep.decided:
                raise Undecided("Ramsey number computation exceeded its budget")
            r_value = rep.n
            r_source = "computed"
        params = schedule_params(args.k, args.t, r_value, [f.n for f in fs], r_source)
        bg = build_product(params, g0, fs, strict=args.strict, opts=_options(args))
        payload = {
            "gadget": "product",
            "k": args.k,
            "t": args.t,
            "r_value": r_value,
            "h": params.h,
            "f": params.f,
            "eps0": str(params.eps0),
        }
        return _write_blockgraph(bg, args.out, payload, args)
    if args.kind == "hypergraph":
        h = gen_hypergraph(
            args.u, args.girth_min, Fraction(args.eps), args.n,
            seed=args.seed, retry_cap=args.retry_cap,
        )
        Path(args.out).write_text(write_hypergraph(h))
        _emit(
            {
                "gadget": "hypergraph",
                "out": args.out,
                "n": h.n,
                "u": h.u,
                "edges": h.num_edges,
            },
            args,
        )
        return EXIT_OK
    raise InputError(f"unknown gadget kind {args.kind!r}")


def _cmd_colour(args) -> int:
    bg = blockgraph_from_json(Path(args.gadget).read_text())
    chi = canonical_colouring(args.kind, bg)
    payload = {"kind": args.kind, "edges": chi.graph.num_edges}
    if args.out:
        Path(args.out).write_text(write_colouring(chi))
        payload["out"] = args.out
    else:
        payload["colouring"] = write_colouring(chi).splitlines()
    if args.check:
        checks = colouring_checks(args.kind, bg, chi)
        payload["checks"] = checks
        payload["clean"] = all(v is True for k, v in checks.items() if isinstance(v, bool))
    _emit(payload, args)
    return EXIT_OK


def _cmd_focus(args) -> int:
    bg = blockgraph_from_json(Path(args.gadget).read_text())
    chi = read_colouring(Path(args.colouring).read_text())
    result = iterated_focus(bg, chi)
    if isinstance(result, FocusFailure):
        _emit(
            {
                "status": "focus-failed",
                "block": result.block,
                "subset": list(result.subset),
                "required_clique": result.required_clique,
            },
            args,
        )
        return EXIT_OK
    verification = verify_focus_report(bg, chi, result)
    text = report_to_json(result)
    if args.out:
        Path(args.out).write_text(text)
    doc = json.loads(text)
    doc["status"] = "ok"
    doc["verified"] = verification.ok
    _emit(doc, args)
    return EXIT_OK


def _cmd_cnf(args) -> int:
    g = _load_graph(args.graph)
    red = _pattern(args.red)
    blue = _pattern(args.blue)
    inst = cnfmod.to_cnf(g, red, blue)
    Path(args.out).write_text(cnfmod.to_dimacs(inst))
    payload = {
        "vars": inst.num_vars,
        "clauses": len(inst.clauses),
        "out": args.out,
    }
    if args.solve:
        model = cnfmod.solve_cnf(inst)
        payload["satisfiable"] = model is not None
        if model is not None and args.witness:
            col = cnfmod.decode_model(inst, model)
            Path(args.witness).write_text(write_colouring(col))
            payload["witness_file"] = args.witness
    _emit(payload, args)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramseykit",
        description="Exact two-colour arrowing toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=True):
        p.add_argument("--no-timing", action="store_true", help="omit timing fields")
        if budget:
            p.add_argument("--budget", type=float, default=None, help="wall seconds")
            p.add_argument("--max-nodes", type=int, default=None, dest="max_nodes")
            p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("arrow", help="decide arrowing for one graph")
    p.add_argument("graph")
    p.add_argument("--red", required=True)
    p.add_argument("--blue", required=True)
    p.add_argument("--witness", help="write a non-arrowing witness here")
    common(p)
    p.set_defaults(func=_cmd_arrow)

    p = sub.add_parser("ramsey", help="smallest complete graph that arrows")
    p.add_argument("--red", required=True)
    p.add_argument("--blue", required=True)
    common(p)
    p.set_defaults(func=_cmd_ramsey)

    p = sub.add_parser("minimal", help="Ramsey-minimality report")
    p.add_argument("graph")
    p.add_argument("--pattern", required=True)
    p.add_argument("--minimalize", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_minimal)

    p = sub.add_parser("survey", help="minimum-degree survey of minimal graphs")
    p.add_argument("--pattern", required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--graphs", help="graph6 stream overriding built-in enumeration")
    p.add_argument("--r-value", type=int, default=None, dest="r_value")
    common(p)
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("distinguish", help="search for a separating graph")
    p.add_argument("--h1", required=True)
    p.add_argument("--h2", required=True)
    p.add_argument("--nmax", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_distinguish)

    p = sub.add_parser("gadget", help="build a construction")
    gsub = p.add_subparsers(dest="kind", required=True)

    g = gsub.add_parser("g0", help="core gadget")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--block", help="seed block graph file (needed for k >= 3)")
    g.add_argument("-o", "--out", required=True)
    common(g, budget=False)
    g.set_defaults(func=_cmd_gadget)

    g = gsub.add_parser("pendant", help="pendant-vertex gadget")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--block", help="seed block graph file")
    g.add_argument("-o", "--out", required=True)
    common(g, budget=False)
    g.set_defaults(func=_cmd_gadget)

    g = gsub.add_parser("product", help="block product instance")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--r-value", type=int, default=None, dest="r_value")
    g.add_argument("--g0", required=True, help="template graph file")
    g.add_argument("--blocks", nargs="+", required=True, help="block graph files")
    g.add_argument("--strict", action="store_true")
    g.add_argument("-o", "--out", required=True)
    common(g)
    g.set_defaults(func=_cmd_gadget)

    g = gsub.add_parser("hypergraph", help="seeded hypergraph generation")
    g.add_argument("--u", type=int, required=True)
    g.add_argument("--girth-min", type=int, required=True, dest="girth_min")
    g.add_argument("--eps", required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--retry-cap", type=int, default=100, dest="retry_cap")
    g.add_argument("-o", "--out", required=True)
    common(g, budget=False)
    g.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("colour", help="canonical colouring of a gadget")
    p.add_argument("gadget", help="block graph JSON file")
    p.add_argument("--kind", required=True, choices=["g0-prop1", "g2", "lemma7"])
    p.add_argument("-o", "--out")
    p.add_argument("--check", action="store_true", help="verify the colouring")
    common(p, budget=False)
    p.set_defaults(func=_cmd_colour)

    p = sub.add_parser("focus", help="iterated colour focusing on a product")
    p.add_argument("gadget", help="block graph JSON file")
    p.add_argument("colouring", help="colouring text file")
    p.add_argument("-o", "--out")
    common(p, budget=False)
    p.set_defaults(func=_cmd_focus)

    p = sub.add_parser("cnf", help="DIMACS export of an arrowing instance")
    p.add_argument("graph")
    p.add_argument("--red", required=True)
    p.add_argument("--blue", required=True)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--solve", action="store_true", help="run the embedded solver")
    p.add_argument("--witness", help="write the decoded model here")
    common(p, budget=False)
    p.set_defaults(func=_cmd_cnf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, FileNotFoundError) as exc:
        print(json.dumps({"error": "input-error", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except Undecided as exc:
        print(json.dumps({"error": "undecided", "message": str(exc)}), file=sys.stderr)
        return EXIT_UNDECIDED
    except InfeasibleError as exc:
        print(
            json.dumps(
                {"error": "infeasible", "message": str(exc), "attempts": exc.attempts}
            ),
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
