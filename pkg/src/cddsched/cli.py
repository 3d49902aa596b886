"""Command line front end: ``solve``, ``bench``, ``check`` and ``gantt``.

Exit codes: 0 success, 1 check mismatch, 2 usage/parse errors, 3 infeasible instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import __version__
from .checks import SUITES, run_suites
from .core import InfeasibleError, Instance, Schedule, StructuralError
from .gantt import RenderError, render_svg, render_text
from .instances import ParseError, build_instance, format_fraction, load_orlib, parse_fraction
from .metaheuristic import AnnealConfig, anneal
from .oracle import OracleLimitError
from .parallel import optimize_parallel
from .single_machine import optimize_sequence_logsearch

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3
CSV_COLUMNS = ["n", "k", "h", "m", "seed", "best_total", "iterations_used", "wall_ms"]
RESULT_SCHEMA = "cddsched.result/1"


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    return values


def _fraction(text: str) -> Fraction:
    try:
        value = parse_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("h must be positive")
    return value


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(x) for x in text.split(",") if x.strip()]


def result_document(instance: Instance, schedule: Schedule, total: int, sequence, *,
                    mode: str, config: dict, source: dict) -> dict:
    machines = []
    for row in schedule.machines:
        machines.append([{"job": j, "start": c - instance.job(j).processing_time, "end": c} for j, c in row])
    return {
        "schema": RESULT_SCHEMA,
        "version": __version__,
        "mode": mode,
        "config": config,
        "instance": {
            **source,
            "n": instance.n,
            "machine_count": instance.machine_count,
            "due_date": instance.due_date,
            "jobs": [[j.id, j.processing_time, j.early_penalty, j.tardy_penalty] for j in instance.jobs],
            "feasibility": [list(r) for r in instance.feasibility] if instance.feasibility else None,
        },
        "due_date": instance.due_date,
        "total": total,
        "sequence": list(sequence),
        "machines": machines,
    }


def _load_instance(args) -> tuple[Instance, dict]:
    raw = load_orlib(args.instance)
    try:
        entry = raw.entry(args.index)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    if args.h is None and args.due_date is None:
        raise UsageError("give --h or --due-date")
    instance = build_instance(entry, args.h or Fraction(1), args.machines, args.due_date)
    if args.feasibility:
        matrix = json.loads(Path(args.feasibility).read_text())
        instance = Instance(instance.jobs, instance.due_date, instance.machine_count, matrix)
    source = {"path": str(args.instance), "k": args.index,
              "h": format_fraction(args.h) if args.h is not None else None}
    return instance, source


def cmd_solve(args) -> int:
    instance, source = _load_instance(args)
    mode = "single" if instance.machine_count == 1 else "parallel"
    if args.mode == "exact-sequence":
        sequence = args.sequence or list(instance.job_ids)
        if mode == "single":
            result = optimize_sequence_logsearch(instance, sequence)
            schedule, total = result.schedule, result.total
        else:
            presult = optimize_parallel(instance, sequence)
            schedule, total = presult.schedule, presult.total
        config = {"mode": "exact-sequence", "optimizer": "logsearch", "sequence": list(sequence)}
    else:
        cfg = AnnealConfig(seed=args.seed, ensemble_size=args.ensemble,
                           max_iterations=args.iterations).resolved(instance.n)
        aresult = anneal(instance, cfg, mode)
        schedule, total, sequence = aresult.best_schedule, aresult.best_total, aresult.best_sequence
        config = {"mode": "anneal", "scoring": mode, **cfg.as_dict(),
                  "initial_temperature": aresult.initial_temperature,
                  "iterations_used": aresult.iterations_used, "best_iteration": aresult.best_iteration}
    print(f"total {total}")
    print("sequence " + " ".join(map(str, sequence)))
    for m, row in enumerate(schedule.machines, start=1):
        spans = " ".join(f"{j}:{c}" for j, c in row) or "-"
        print(f"machine {m} completions {spans}")
    if args.json:
        doc = result_document(instance, schedule, total, sequence, mode=args.mode, config=config, source=source)
        Path(args.json).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _bench_cell(cell: tuple) -> dict:
    path, k, h, m, seed, iterations, ensemble = cell
    entry = load_orlib(path).entry(k)
    instance = build_instance(entry, h, m)
    cfg = AnnealConfig(seed=seed, max_iterations=iterations, ensemble_size=ensemble)
    start = time.perf_counter()
    result = anneal(instance, cfg, "single" if m == 1 else "parallel")
    wall_ms = (time.perf_counter() - start) * 1000.0
    return {"n": entry.n, "k": k, "h": h, "m": m, "seed": seed, "best_total": result.best_total,
            "iterations_used": result.iterations_used, "wall_ms": wall_ms}


def _table(rows: list[dict]) -> str:
    """Best total per (n, k) row and h column, minimum over seeds."""
    hs = sorted({r["h"] for r in rows})
    best: dict[tuple[int, int], dict[Fraction, int]] = {}
    for r in rows:
        cell = best.setdefault((r["n"], r["k"]), {})
        cell[r["h"]] = min(cell.get(r["h"], r["best_total"]), r["best_total"])
    header = f"{'n':>5} {'k':>4} " + " ".join(f"{'h=' + format_fraction(h):>10}" for h in hs)
    lines = [header]
    for (n, k), cells in sorted(best.items()):
        lines.append(f"{n:>5} {k:>4} " + " ".join(f"{cells.get(h, ''):>10}" for h in hs))
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    if not args.seeds:
        raise UsageError("--seeds must list at least one seed")
    if not args.h_list:
        raise UsageError("--h-list must list at least one value")
    raw = load_orlib(args.instances)
    ks = args.k_list or list(range(1, len(raw) + 1))
    for k in ks:
        try:
            raw.entry(k)
        except IndexError as exc:
            raise UsageError(str(exc)) from None
    cells = [(str(args.instances), k, h, args.machines, seed, args.iterations, args.ensemble)
             for k in ks for h in args.h_list for seed in args.seeds]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_bench_cell, cells))
    else:
        rows = [_bench_cell(c) for c in cells]
    rows.sort(key=lambda r: (r["n"], r["k"], r["h"], r["m"], r["seed"]))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        wall = f"{r['wall_ms']:.1f}" if args.timing else ""
        writer.writerow([r["n"], r["k"], format_fraction(r["h"]), r["m"], r["seed"],
                         r["best_total"], r["iterations_used"], wall])
        print(f"n={r['n']} k={r['k']} h={format_fraction(r['h'])} m={r['m']} seed={r['seed']} "
              f"best={r['best_total']} ({r['wall_ms']:.0f} ms)", file=sys.stderr)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if args.table:
        sys.stdout.write(_table(rows))
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        reports = list(run_suites(args.suite, args.trials, args.max_n, args.seed))
    except OracleLimitError as exc:
        raise UsageError(str(exc)) from None
    status = EXIT_OK
    for report in reports:
        total = report.passed + report.failed
        print(f"{report.name}: {report.passed}/{total} pass")
        for ce in report.counterexamples:
            print(f"  counterexample: {json.dumps(ce, sort_keys=True)}")
        if not report.ok:
            status = EXIT_MISMATCH
    return status


def cmd_gantt(args) -> int:
    try:
        doc = json.loads(Path(args.result).read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"result file is not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("result file must hold a JSON object")
    try:
        text = render_text(doc) if args.format == "text" else render_svg(doc)
    except RenderError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cddsched", description="Common due-date earliness/tardiness solver")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one benchmark instance")
    p.add_argument("--instance", required=True, type=Path, help="OR-library sch file")
    p.add_argument("--index", type=int, default=1, help="1-based instance index k")
    p.add_argument("--h", type=_fraction, default=None, help="restrictive factor, e.g. 0.4 or 2/5")
    p.add_argument("--due-date", type=int, default=None, help="explicit due date (overrides --h)")
    p.add_argument("--machines", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=None, help="SA iterations per chain (default 500n)")
    p.add_argument("--ensemble", type=int, default=None, help="SA chains (default 4 + n//10)")
    p.add_argument("--mode", choices=["exact-sequence", "anneal"], default="anneal")
    p.add_argument("--sequence", type=_int_list, default=None, help="job ids, e.g. 1,2,3")
    p.add_argument("--feasibility", default=None, help="JSON n x m boolean matrix")
    p.add_argument("--json", default=None, help="write the result document here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="anneal every (instance, h, seed) cell and write CSV")
    p.add_argument("--instances", required=True, type=Path)
    p.add_argument("--h-list", type=_fraction_list, default=_fraction_list("0.2,0.4,0.6,0.8"))
    p.add_argument("--machines", type=int, default=1)
    p.add_argument("--seeds", type=_int_list, required=True)
    p.add_argument("--k-list", type=_int_list, default=None, help="subset of instance indices")
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--ensemble", type=int, default=None)
    p.add_argument("--workers", type=int, default=1, help="process pool size")
    p.add_argument("--timing", action="store_true", help="fill wall_ms (makes output run-dependent)")
    p.add_argument("--table", action="store_true", help="also print an n/k by h grid")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="randomized solver-vs-oracle equivalence")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gantt", help="render a result document")
    p.add_argument("--result", required=True)
    p.add_argument("--format", choices=["text", "svg"], default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gantt)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "machines", 1) < 1:
        parser.error("--machines must be >= 1")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, ParseError, StructuralError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
