"""Command-line front end: ``ttgs {solve,verify,probe,gen,bench}``.

Reports are JSON with a fixed key order, every float written with exactly
nine decimals and infinity written as the string ``"inf"``, so identical
inputs give byte-identical output.

Exit codes: 0 ok, 1 input/spec error, 2 improving cycle under
``--fail-on-cycle``, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import asdict

from . import algebra
from .graph import (
    ParseError,
    generate_random,
    parse_network,
    scalarize,
    serialize_network,
)
from .oracle import EnumerationBudgetExceeded, enumerate_optimal, verify_bounds
from .solver import IN_PLACE, SYNCHRONOUS, relaxations_per_iteration, solve

FORMAT_VERSION = 1
DEFAULT_SEED = 0

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CYCLE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


# --- output ---------------------------------------------------------------


def fmt_float(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = f"{x:.9f}"
    if s == "-0.000000000":
        s = "0.000000000"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON encoder with fixed float formatting; key order is insertion order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(dumps(x, indent, _level + 1) for x in obj) + "]"
        items = [pad + dumps(x, indent, _level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def emit(payload: dict, output: str | None):
    text = dumps(payload) + "\n"
    if output is None:
        sys.stdout.write(text)
        return
    # write-then-rename so a partial report never appears
    d = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ttgs-", suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, output)


def _witness_json(w):
    if w is None:
        return None
    return [w[0], w[1]]


# --- commands -------------------------------------------------------------


def _load(args):
    gamma = algebra.parse_gamma(args.gamma)
    evalmap = algebra.parse_eval(args.eval)
    if not args.input:
        raise UsageError("--input is required")
    with open(args.input, encoding="utf-8") as fh:
        net = parse_network(fh.read(), allow_negative=args.allow_negative)
    return gamma, evalmap, scalarize(net, evalmap)


def _config(args, *keys):
    cfg = {}
    for k in keys:
        v = getattr(args, k)
        if k == "input" and v:
            v = os.path.basename(v)
        cfg[k] = v
    return cfg


def run_solve(args) -> int:
    gamma, evalmap, net = _load(args)
    report = solve(net, gamma, args.schedule, args.max_iters, trace=args.trace)
    payload = {
        "format_version": FORMAT_VERSION,
        "command": "solve",
        "n": net.n,
        "m": net.m,
        "source": net.source,
        "gamma": gamma.spec,
        "eval": evalmap.spec,
        "schedule": report.schedule,
        "iterations_run": report.iterations_run,
        "converged_at": report.converged_at,
        "improving_cycle": report.improving_cycle,
        "relaxations_total": report.relaxations_total,
        "relaxations_per_iteration": report.relaxations_per_iteration,
        "distances": report.final.labels,
        "witnesses": [_witness_json(w) for w in report.final.witnesses],
    }
    if args.trace:
        payload["trace"] = [lv.labels for lv in report.per_iteration_labels]
    payload["config"] = _config(
        args, "input", "max_iters", "trace", "seed", "fail_on_cycle", "allow_negative"
    )
    emit(payload, args.output)
    if report.improving_cycle and args.fail_on_cycle:
        print("improving ternary cycle detected", file=sys.stderr)
        return EXIT_CYCLE
    return EXIT_OK


def run_verify(args) -> int:
    gamma, evalmap, net = _load(args)
    if (net.n > 8 or args.budget > 8) and not args.force:
        raise UsageError("verify is exhaustive: n and --budget must be <= 8 (use --force)")
    iters = max(net.n - 1, args.budget)
    report = solve(net, gamma, SYNCHRONOUS, iters)
    table = enumerate_optimal(net, gamma, args.budget)
    rec = verify_bounds(report, table)
    payload = {
        "format_version": FORMAT_VERSION,
        "command": "verify",
        "n": net.n,
        "m": net.m,
        "source": net.source,
        "gamma": gamma.spec,
        "eval": evalmap.spec,
        "edge_budget": args.budget,
        "iterations_run": report.iterations_run,
        "improving_cycle": report.improving_cycle,
        "lower_bound_ok": rec.ok,
        "n_equal": rec.n_equal,
        "n_strict": rec.n_strict,
        "violations": rec.violations,
        "vertices": [
            {
                "vertex": c.vertex,
                "label": c.label,
                "oracle": c.oracle,
                "equal": c.equal,
                "strict": c.strict,
                "walk": table.walks[c.vertex],
            }
            for c in rec.vertices
        ],
        "config": _config(args, "input", "budget", "strict_lemma", "force", "allow_negative"),
    }
    emit(payload, args.output)
    if not rec.ok:
        print(f"lower bound violated at vertices {rec.violations}", file=sys.stderr)
        return EXIT_VERIFY
    if args.strict_lemma and rec.n_strict:
        print("label equality fails at some vertices (--strict-lemma)", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def run_probe(args) -> int:
    gamma = algebra.parse_gamma(args.gamma)
    if args.samples <= 0:
        raise UsageError("--samples must be positive")
    laws = list(algebra.LAWS) if args.law == "all" else [args.law]
    reports = []
    for law in laws:
        rep = algebra.probe(law, gamma, args.samples, args.seed, grid=args.grid)
        d = asdict(rep)
        d["violated"] = rep.violated
        reports.append(d)
    payload = {
        "format_version": FORMAT_VERSION,
        "command": "probe",
        "gamma": gamma.spec,
        "reports": reports,
        "config": _config(args, "law", "samples", "seed", "grid"),
    }
    emit(payload, args.output)
    return EXIT_OK


def _parse_ranges(text: str):
    parts = text.split(",")
    if len(parts) != 6:
        raise UsageError("--ranges needs six numbers: clo,chi,tlo,thi,rlo,rhi")
    vals = [float(x) for x in parts]
    rng = tuple((vals[i], vals[i + 1]) for i in (0, 2, 4))
    if any(lo > hi or lo < 0 for lo, hi in rng):
        raise UsageError("--ranges must be nonnegative intervals with lo <= hi")
    return rng


def run_gen(args) -> int:
    net = generate_random(
        args.n, args.p, _parse_ranges(args.ranges), seed=args.seed, integer=args.integer
    )
    text = serialize_network(net)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"bad number list {text!r}") from None


def run_bench(args) -> int:
    gamma = algebra.parse_gamma(args.gamma)
    evalmap = algebra.parse_eval(args.eval)
    sizes = _int_list(args.sizes)
    probs = _float_list(args.probs)
    if not sizes or not probs or min(sizes) < 1 or not all(0 <= p <= 1 for p in probs):
        raise UsageError("invalid sweep: sizes must be >= 1 and probs in [0, 1]")
    ranges = _parse_ranges(args.ranges)
    rows = []
    failed = False
    for n in sizes:
        for p in probs:
            net = scalarize(generate_random(n, p, ranges, seed=args.seed), evalmap)
            # counted independently of the solver's own predecessor lists
            sum_preds = 0
            for e in net.edges:
                k = len({x.u for x in net.edges if x.v == e.u})
                sum_preds += k + (1 if e.u == net.source else 0)
            t0 = time.perf_counter()
            report = solve(net, gamma, SYNCHRONOUS, args.max_iters)
            wall = (time.perf_counter() - t0) * 1000.0
            bound = (n - 1) * n * net.m
            ok = (
                all(c == sum_preds for c in report.relaxations_per_iteration)
                and report.relaxations_total <= bound
                and sum_preds == relaxations_per_iteration(net)
            )
            failed |= not ok
            rows.append(
                {
                    "n": n,
                    "p": p,
                    "m": net.m,
                    "sum_preds": sum_preds,
                    "relaxations_per_iteration": report.relaxations_per_iteration,
                    "relaxations_total": report.relaxations_total,
                    "bound": bound,
                    "iterations": report.iterations_run,
                    "accounting_ok": ok,
                    "wall_time_ms": wall,
                }
            )
    payload = {
        "format_version": FORMAT_VERSION,
        "command": "bench",
        "gamma": gamma.spec,
        "eval": evalmap.spec,
        "runs": rows,
        "config": _config(args, "sizes", "probs", "seed", "max_iters"),
    }
    emit(payload, args.output)
    if failed:
        print("relaxation accounting mismatch", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# --- argument parsing -----------------------------------------------------


def _schedule(text: str) -> str:
    text = text.replace("-", "_")
    if text not in (SYNCHRONOUS, IN_PLACE):
        raise argparse.ArgumentTypeError("schedule must be synchronous or in-place")
    return text


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--input", metavar="PATH")
    shared.add_argument("--gamma", default="linear", metavar="SPEC")
    shared.add_argument("--eval", default="sum:1,1,1", metavar="SPEC")
    shared.add_argument("--schedule", type=_schedule, default=SYNCHRONOUS)
    shared.add_argument("--max-iters", type=int, default=None, metavar="K")
    shared.add_argument("--trace", action="store_true")
    shared.add_argument("--seed", type=int, default=DEFAULT_SEED)
    shared.add_argument("--output", metavar="PATH")
    shared.add_argument("--fail-on-cycle", action="store_true")
    shared.add_argument("--strict-lemma", action="store_true")
    shared.add_argument("--force", action="store_true")
    shared.add_argument("--allow-negative", action="store_true")

    parser = argparse.ArgumentParser(prog="ttgs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[shared], help="run the ternary solver")
    p.set_defaults(func=run_solve)

    p = sub.add_parser("verify", parents=[shared], help="compare labels with exhaustive walks")
    p.add_argument("--budget", type=int, default=8, metavar="L", help="walk edge budget")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("probe", parents=[shared], help="probe algebraic laws of a gamma operator")
    p.add_argument("--law", choices=[*algebra.LAWS, "all"], default="all")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--grid", action="store_true", help="exhaustive integer grid 0..10")
    p.set_defaults(func=run_probe)

    p = sub.add_parser("gen", parents=[shared], help="generate a random TTGN network")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--ranges", default="0,100,0,100,0,100")
    p.add_argument("--integer", action="store_true")
    p.set_defaults(func=run_gen)

    p = sub.add_parser("bench", parents=[shared], help="relaxation accounting sweep")
    p.add_argument("--sizes", default="10,20,40,80")
    p.add_argument("--probs", default="0,0.1,0.2")
    p.add_argument("--ranges", default="0,100,0,100,0,100")
    p.set_defaults(func=run_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; 2 is reserved for improving cycles
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (OSError, ValueError, UsageError, EnumerationBudgetExceeded) as exc:
        kind = "parse error" if isinstance(exc, ParseError) else "error"
        print(f"ttgs: {kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
