"""
Command-line interface.

Exit codes: 0 success (or accept for ``decide``), 1 reject, 2 usage or
input error, 3 internal numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .amplification import amplified_probability, plan_repetitions, simulate_amplifier
from .decider import convergence_curve, decide
from .errors import GenerationFailed, InputError, QWalkError, Unreachable
from .graphs import (
    ProblemInstance,
    components,
    format_instance,
    generate,
    parse_edge_list,
    parse_instance,
    regularize,
)
from .spectral import check_gap_bound, spectral_reports

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input (give --input or --kind)")
    g.add_argument("--input", type=Path, help="instance file")
    g.add_argument("--kind", choices=["cycle", "complete", "random_regular"], help="generate the graph instead")
    g.add_argument("--n", type=int, help="vertex count for --kind")
    g.add_argument("--d", type=int, help="degree for --kind random_regular")
    g.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    g.add_argument("--s", type=int, help="source vertex for --kind (default 0)")
    g.add_argument("--t", type=int, help="target vertex for --kind (default n-1)")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", type=Path, help="write here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qwalk", description="Quantum walk simulator for regular-graph connectivity.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--kind", required=True, choices=["cycle", "complete", "random_regular"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--t", type=int)
    _add_output(p)

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("--input", type=Path, required=True)
    _add_output(p)

    p = sub.add_parser("decide", help="run the walk decider on an instance")
    _add_source(p)
    p.add_argument("--k", type=int, help="step count (default ceil(d(d+1)^2 n^2 ln(2n)/8))")
    p.add_argument("--sample", action="store_true", help="also draw an accept/reject outcome using --seed")
    _add_output(p)

    p = sub.add_parser("spectrum", help="per-component adjacency and walk spectra")
    _add_source(p)
    p.add_argument("--start", type=int, help="vertex for eigenvector overlaps (default s)")
    _add_output(p)

    p = sub.add_parser("converge", help="distance-to-uniform curve")
    _add_source(p)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--start", type=int, help="start vertex (default s)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_output(p)

    p = sub.add_parser("amplify", help="amplified acceptance probability and repetition plan")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--f", type=int)
    p.add_argument("--target", type=float)
    _add_output(p)

    p = sub.add_parser("regularize", help="reduce an edge-list instance to a 3-regular instance")
    p.add_argument("--input", type=Path, required=True)
    _add_output(p)
    return parser


def _load(args) -> ProblemInstance:
    if (args.input is None) == (args.kind is None):
        raise UsageError("give exactly one of --input or --kind")
    if args.input is not None:
        return parse_instance(args.input.read_bytes())
    if args.n is None:
        raise UsageError("--kind needs --n")
    g = generate(args.kind, args.n, args.d, args.seed)
    s = 0 if args.s is None else args.s
    t = g.n - 1 if args.t is None else args.t
    return ProblemInstance(g, s, t)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _finite(*values) -> None:
    if not all(math.isfinite(v) for v in values):
        raise FloatingPointError("non-finite result")


def cmd_gen(args):
    g = generate(args.kind, args.n, args.d, args.seed)
    inst = ProblemInstance(g, args.s, g.n - 1 if args.t is None else args.t)
    note = f"{args.kind} n={g.n} d={g.d}" + (f" seed={args.seed}" if args.kind == "random_regular" else "")
    return EXIT_OK, format_instance(inst, note)


def cmd_validate(args):
    try:
        inst = parse_instance(args.input.read_bytes())
    except InputError as exc:
        report = {"valid": False, "error": type(exc).__name__, "message": str(exc)}
        return EXIT_USAGE, _json(report)
    cmap = components(inst.graph)
    report = {
        "valid": True,
        "n": inst.graph.n,
        "d": inst.graph.d,
        "m": inst.graph.m,
        "s": inst.s,
        "t": inst.t,
        "components": cmap.count,
        "component_sizes": list(cmap.sizes),
        "connected": cmap.connected(inst.s, inst.t),
    }
    return EXIT_OK, _json(report)


def cmd_decide(args):
    inst = _load(args)
    report = decide(inst, k=args.k, sample=args.sample, seed=args.seed)
    _finite(report.acceptance_probability, report.distance_to_uniform)
    return (EXIT_OK if report.accepted else EXIT_REJECT), _json(report.to_dict())


def cmd_spectrum(args):
    inst = _load(args)
    start = inst.s if args.start is None else args.start
    g = inst.graph
    if not 0 <= start < g.n:
        raise UsageError(f"--start {start} outside [0, {g.n})")
    out = []
    for rep in spectral_reports(g, start):
        entry = rep.to_dict()
        if rep.n_u >= 2:
            holds, margin = check_gap_bound(rep, g.d)
            entry.update(gap_bound_holds=holds, gap_margin=margin)
        else:
            entry.update(gap_bound_holds=None, gap_margin=None)
        _finite(*rep.lambdas, *rep.mus)
        out.append(entry)
    return EXIT_OK, _json({"n": g.n, "d": g.d, "components": out})


def cmd_converge(args):
    inst = _load(args)
    if args.steps < 0:
        raise UsageError("--steps must be nonnegative")
    start = inst.s if args.start is None else args.start
    if not 0 <= start < inst.graph.n:
        raise UsageError(f"--start {start} outside [0, {inst.graph.n})")
    rows = convergence_curve(inst.graph, start, args.steps)
    for row in rows:
        _finite(*row[1:])
    if args.format == "json":
        keys = ("l", "distance", "bound", "classical_tv")
        return EXIT_OK, _json({"n": inst.graph.n, "d": inst.graph.d, "start": start,
                               "rows": [dict(zip(keys, r)) for r in rows]})
    buf = io.StringIO()
    buf.write("l,distance,bound,classical_tv\n")
    for l, dist, bound, tv in rows:
        buf.write(f"{l},{dist:.17g},{bound:.17g},{tv:.17g}\n")
    return EXIT_OK, buf.getvalue()


def cmd_amplify(args):
    if args.f is None and args.target is None:
        raise UsageError("give --f, --target, or both")
    report = {"p": args.p}
    if args.target is not None:
        plan = plan_repetitions(args.p, args.target)
        report["plan"] = plan.to_dict()
    f = args.f if args.f is not None else report["plan"]["f"]
    run = simulate_amplifier(args.p, f)
    report.update(
        f=f,
        amplified=amplified_probability(args.p, f),
        simulated_total=run.total,
        rounds=run.rounds,
    )
    _finite(report["amplified"], run.total)
    return EXIT_OK, _json(report)


def cmd_regularize(args):
    n, edges, s, t = parse_edge_list(args.input.read_bytes())
    g, s2, t2 = regularize(n, edges, s, t)
    note = f"3-regular reduction of {args.input.name}: n={n} m={len(edges)} s={s} t={t}"
    return EXIT_OK, format_instance(ProblemInstance(g, s2, t2), note)


COMMANDS = {
    "gen": cmd_gen,
    "validate": cmd_validate,
    "decide": cmd_decide,
    "spectrum": cmd_spectrum,
    "converge": cmd_converge,
    "amplify": cmd_amplify,
    "regularize": cmd_regularize,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        code, text = COMMANDS[args.command](args)
        if args.output is not None:
            args.output.write_bytes(text.encode("ascii"))
        else:
            stdout.write(text)
    except UsageError as exc:
        print(f"qwalk: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (InputError, Unreachable, OSError) as exc:
        print(f"qwalk: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    except (GenerationFailed, FloatingPointError, np.linalg.LinAlgError, QWalkError) as exc:
        print(f"qwalk: numerical failure: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_NUMERIC
    return code


def main() -> None:
    sys.exit(run())
