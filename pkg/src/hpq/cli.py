"""Command line harness: instance generation, verification, benchmarks.

Exit codes: 0 success / verification passed, 1 verification mismatch,
2 usage or input errors.  HPQ_THREADS caps worker threads for the query
sweeps (default 1; the structures are read-only during queries).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from .dual_tree import DualTree
from .flarb import amortized_bound, potential
from .geometry import Mode
from .interval import IntervalStructure
from .okey_dokey import OkeyDokey
from .prefix import PrefixStructure
from .testkit import (
    SHAPES,
    bf_query,
    gen_convex,
    instance_from_json,
    instance_to_json,
    random_query,
)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HPQ_THREADS", "1")))
    except ValueError:
        return 1


def _load_instance(path: str):
    try:
        with open(path) as fh:
            return instance_from_json(fh.read())
    except (OSError, ValueError, KeyError) as e:
        print(f"error: cannot load instance {path}: {e}", file=sys.stderr)
        raise SystemExit(2)


def cmd_gen(args) -> int:
    try:
        pts = gen_convex(args.n, args.seed, args.shape)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = instance_to_json(pts, Mode(args.mode))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _build_structure(name: str, pts, mode: Mode, k: Optional[int], eps):
    if name == "okey-dokey":
        return OkeyDokey(pts, mode, k=k, eps=eps)
    if name == "interval":
        return IntervalStructure(pts, mode)
    if name == "prefix":
        s = PrefixStructure(mode)
        for p in pts:
            s.push(p)
        return s
    raise ValueError(f"unknown structure {name!r}")


def cmd_verify(args) -> int:
    pts, mode = _load_instance(args.infile)
    if args.mode:
        mode = Mode(args.mode)
    try:
        s = _build_structure(args.structure, pts, mode, args.k, args.eps)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    queries = [random_query(rng) for _ in range(args.queries)]

    def run(chunk):
        bad = []
        for q, line in chunk:
            want = bf_query(pts, mode, q, line)
            got = s.query(q, line)
            if got != want:
                bad.append((q, line, want, got))
        return bad

    nt = _threads()
    if nt == 1 or args.structure == "okey-dokey":
        # okey-dokey caches are not locked; keep it single threaded
        mismatches = run(queries)
    else:
        size = (len(queries) + nt - 1) // nt
        chunks = [queries[i : i + size] for i in range(0, len(queries), size)]
        with ThreadPoolExecutor(max_workers=nt) as ex:
            mismatches = [m for part in ex.map(run, chunks) for m in part]
    if mismatches:
        q, line, want, got = mismatches[0]
        print(
            f"FAIL {len(mismatches)}/{len(queries)} mismatches; first: "
            f"q={q} line={line.a}->{line.b} want={want} got={got}"
        )
        return 1
    print(f"OK {len(queries)} queries match the brute-force oracle")
    return 0


def cmd_bench_flarb(args) -> int:
    try:
        pts = gen_convex(args.n, args.seed, args.shape)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    mode = Mode(args.mode)
    dual = DualTree(mode)
    rows = []
    cum = 0
    t0 = time.perf_counter()
    for step, p in enumerate(pts, start=1):
        _, delta = dual.insert(p)
        cum += delta.count
        rows.append((step, delta.count, cum, dual.tree.phi, 0))
    elapsed = time.perf_counter() - t0
    n = len(pts)
    fitted = cum / (n * max(1.0, math.log2(n)))
    out = sys.stdout
    close = False
    if args.out:
        out = open(args.out, "w", newline="")
        close = True
    w = csv.writer(out)
    w.writerow(["step", "delta", "cumulative", "potential", "grappa_writes"])
    for row in rows:
        w.writerow(row)
    if close:
        out.close()
    print(
        f"n={n} cumulative={cum} fitted_c={fitted:.3f} elapsed={elapsed:.2f}s",
        file=sys.stderr,
    )
    return 0


def cmd_bench_query(args) -> int:
    pts, mode = _load_instance(args.infile)
    if args.mode:
        mode = Mode(args.mode)
    try:
        s = _build_structure(args.structure, pts, mode, args.k, args.eps)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    queries = [random_query(rng) for _ in range(args.queries)]
    t0 = time.perf_counter()
    for q, line in queries:
        s.query(q, line)
    elapsed = time.perf_counter() - t0
    report = {
        "structure": args.structure,
        "n": len(pts),
        "mode": mode.value,
        "queries": len(queries),
        "seconds": round(elapsed, 6),
        "per_query_us": round(1e6 * elapsed / max(1, len(queries)), 3),
    }
    print(json.dumps(report))
    return 0


def cmd_space(args) -> int:
    ns = [int(x) for x in args.n_list.split(",")]
    rows = []
    for n in ns:
        try:
            pts = gen_convex(n, args.seed, args.shape)
        except ValueError as e:
            print(f"error: n={n}: {e}", file=sys.stderr)
            return 2
        mode = Mode(args.mode)
        if args.structure == "okey-dokey":
            s = OkeyDokey(pts, mode, k=args.k)
            rows.append({"n": n, "stored_cells": s.stored_cells()})
        elif args.structure == "prefix":
            s = PrefixStructure(mode)
            for p in pts:
                s.push(p)
            rows.append(
                {"n": n, "writes": s.store.writes, "cells": s.store.cells}
            )
        else:
            print("error: space supports okey-dokey and prefix", file=sys.stderr)
            return 2
    print(json.dumps(rows))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(
        prog="hpq", description="halfplane proximity query harness"
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a convex instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--shape", choices=SHAPES, default="circle")
    g.add_argument("--mode", choices=["farthest", "nearest"], default="farthest")
    g.add_argument("--out")
    g.set_defaults(fn=cmd_gen)

    v = sub.add_parser("verify", help="check a structure against brute force")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument(
        "--structure",
        choices=["okey-dokey", "interval", "prefix"],
        default="interval",
    )
    v.add_argument("--mode", choices=["farthest", "nearest"])
    v.add_argument("--queries", type=int, default=1000)
    v.add_argument("--k", type=int)
    v.add_argument("--eps", type=float)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(fn=cmd_verify)

    b = sub.add_parser("bench-flarb", help="insertion/restructuring benchmark")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--shape", choices=SHAPES, default="circle")
    b.add_argument("--mode", choices=["farthest", "nearest"], default="farthest")
    b.add_argument("--out")
    b.set_defaults(fn=cmd_bench_flarb)

    bq = sub.add_parser("bench-query", help="query throughput benchmark")
    bq.add_argument("--in", dest="infile", required=True)
    bq.add_argument(
        "--structure",
        choices=["okey-dokey", "interval", "prefix"],
        default="interval",
    )
    bq.add_argument("--mode", choices=["farthest", "nearest"])
    bq.add_argument("--queries", type=int, default=1000)
    bq.add_argument("--k", type=int)
    bq.add_argument("--eps", type=float)
    bq.add_argument("--seed", type=int, default=0)
    bq.set_defaults(fn=cmd_bench_query)

    sp = sub.add_parser("space", help="space accounting across sizes")
    sp.add_argument("--structure", choices=["okey-dokey", "prefix"], required=True)
    sp.add_argument("--n-list", required=True, help="comma separated sizes")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--shape", choices=SHAPES, default="circle")
    sp.add_argument("--mode", choices=["farthest", "nearest"], default="farthest")
    sp.set_defaults(fn=cmd_space)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as e:
        return int(e.code or 0)


if __name__ == "__main__":
    sys.exit(main())
