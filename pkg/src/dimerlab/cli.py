"""``dimerlab`` command line: machine-readable results on stdout, summaries on stderr.

Exit status is 0 on success, 1 on a computation error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from typing import Sequence

import numpy as np

from . import series, strip
from .checks import run_selfcheck
from .clusters import cluster_record, enumerate_clusters
from .graph import GraphError, complete_graph, load_graph, random_connected_graph
from .tutte import tutte_10_bhkk, tutte_eval_delcon, tutte_full, ursell, ursell_brute


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _grid(text: str) -> list[float]:
    """``--grid 11`` means 11 uniform points on [0, 1]; anything with a comma or dot is a list."""
    if "," not in text and "." not in text:
        try:
            count = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad grid {text!r}")
        # a lone 0 or 1 is a density, not a count
        if count in (0, 1):
            return [float(count)]
        return series.uniform_grid(count)
    return _float_list(text)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("DIMERLAB_THREADS")
    return int(env) if env else 1


def _write_csv(rows: list[dict], fields: Sequence[str], path: str | None) -> None:
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=list(fields), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(row[k]) if isinstance(row[k], float) else row[k] for k in fields})
    finally:
        if path:
            out.close()


def cmd_tutte(args) -> int:
    g = load_graph(args.graph)
    t10 = tutte_10_bhkk(g)
    out = {"n": g.n, "m": g.m, "T10": t10, "psi": ursell(g)}
    if args.full:
        out["tutte"] = [list(row) for row in tutte_full(g).coeffs]
    print(json.dumps(out))
    return 0


def cmd_ursell(args) -> int:
    g = load_graph(args.graph)
    if args.method == "brute":
        psi = ursell_brute(g)
    elif args.method == "delcon":
        t = tutte_eval_delcon(g, 1, 0)
        psi = int(t) * (-1) ** (g.n - 1)
    else:
        psi = ursell(g)
    print(psi)
    return 0


def cmd_clusters(args) -> int:
    threads = _threads(args)
    out = open(args.output, "w") if args.output else sys.stdout
    total = count = 0
    try:
        stream = enumerate_clusters(args.k, symmetric=args.symmetric)
        if args.count_only:
            count = sum(1 for _ in stream)
        else:
            if threads > 1:
                from concurrent.futures import ProcessPoolExecutor

                with ProcessPoolExecutor(threads) as ex:
                    records = ex.map(cluster_record, stream, chunksize=256)
                    for rec in records:
                        count += 1
                        total += rec["psi"]
                        out.write(json.dumps(rec) + "\n")
            else:
                for c in stream:
                    rec = cluster_record(c)
                    count += 1
                    total += rec["psi"]
                    out.write(json.dumps(rec) + "\n")
    finally:
        if args.output:
            out.close()
    if args.count_only:
        print(json.dumps({"k": args.k, "count": count}))
    _log(f"k={args.k}: {count} clusters" + ("" if args.count_only else f", sum of psi = {total}"))
    return 0


def cmd_series(args) -> int:
    rows = series.table_rows(args.d, args.order, args.grid)
    _write_csv(rows, ["p", "lambda", "leading", "correction"], args.csv)
    return 0


def cmd_strip(args) -> int:
    threads = _threads(args)
    rows = []
    for p in args.p:
        row = strip.compare_with_series(p, args.widths, args.boundary, args.order, threads)
        rows.append(row)
        _log(f"p={p}: strip {row['estimate']:.8f} (spread {row['spread']:.1e}), series {row['series_value']:.8f}")
    _write_csv(rows, ["p", "estimate", "spread", "series_value", "delta"], args.csv)
    return 0


def _timed(fn, g):
    t0 = time.perf_counter()
    value = fn(g)
    return value, time.perf_counter() - t0


def cmd_bench(args) -> int:
    graphs = []
    if args.graph:
        graphs.append(("input", load_graph(args.graph)))
    else:
        graphs.append(("K7", complete_graph(7)))
    rng = np.random.default_rng(args.seed)
    for i in range(args.random):
        graphs.append((f"random{i}", random_connected_graph(rng, 7, int(rng.integers(4, 15)))))
    rows = []
    for name, g in graphs:
        t_sub, dt_sub = _timed(tutte_10_bhkk, g)
        psi, dt_brute = _timed(ursell_brute, g)
        t_brute = psi * (-1) ** (g.n - 1)
        rows.append(
            {
                "graph": name,
                "n": g.n,
                "m": g.m,
                "T10_bhkk": t_sub,
                "T10_brute": t_brute,
                "seconds_bhkk": dt_sub,
                "seconds_brute": dt_brute,
            }
        )
        _log(f"{name}: n={g.n} m={g.m} T(1,0)={t_sub}/{t_brute}  subset {dt_sub:.4f}s  brute {dt_brute:.4f}s")
    _write_csv(rows, list(rows[0]), args.csv)
    if any(r["T10_bhkk"] != r["T10_brute"] for r in rows):
        _log("backends disagree")
        return 1
    return 0


def cmd_selfcheck(args) -> int:
    report = run_selfcheck(args.seed, args.random_graphs)
    print(json.dumps(report, indent=2))
    for r in report["checks"]:
        _log(f"{'PASS' if r['ok'] else 'FAIL'} {r['name']}: {r['detail']}")
    return 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimerlab", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None, help="worker count (default: $DIMERLAB_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tutte", help="T(1,0), psi'_c and optionally the full Tutte polynomial")
    p.add_argument("--graph", required=True)
    p.add_argument("--full", action="store_true")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("ursell", help="Ursell coefficient psi'_c of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=["bhkk", "brute", "delcon"], default="bhkk")
    p.set_defaults(func=cmd_ursell)

    p = sub.add_parser("clusters", help="stream connected k-dimer clusters as JSONL")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--emit", choices=["jsonl"], default="jsonl")
    p.add_argument("--symmetric", action="store_true", help="also quotient by lattice rotations/reflections")
    p.add_argument("--output")
    p.set_defaults(func=cmd_clusters)

    p = sub.add_parser("series", help="tabulate the lambda_d(p) series")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--grid", type=_grid, default=series.uniform_grid(11))
    p.add_argument("--csv")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("strip", help="transfer-matrix lambda_2(p) against the series")
    p.add_argument("--p", type=_float_list, required=True)
    p.add_argument("--widths", type=_int_list, default=[10, 12])
    p.add_argument("--boundary", choices=["free", "periodic"], default="periodic")
    p.add_argument("--order", type=int, default=7)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("bench", help="time the subset recursion against brute force")
    p.add_argument("--graph")
    p.add_argument("--random", type=int, default=0, help="also time this many random 7-vertex graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selfcheck", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-graphs", type=int, default=60)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads is not None and args.threads < 1:
            parser.error("--threads must be positive")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GraphError, ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        _log(f"error: {exc}")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
