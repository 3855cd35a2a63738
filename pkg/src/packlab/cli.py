"""Command-line front door: instance generation, solving, benchmarks, checks.

Reports are deterministic for identical inputs: JSON with sorted keys and no
timestamps (wall times go to stderr).  Rationals on the command line are
written "p/q" or as plain integers; decimal floats are rejected so every
quantity stays on the exact grid.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import generator, heuristics, leveldp, oracle
from .core import (Instance, PackLabError, parse_instance, profile,
                   validate_packing)
from .partition import algorithm_b
from .oracle import lower_bound_volume

REPORT_SCHEMA = "packlab-report/1"
ALGS = ("nf", "ff", "bf", "nfd", "ffd", "bfd", "partition", "dp", "exact")


def parse_rational(text: str) -> Fraction:
    """Accept "p/q" or an integer; reject decimal floats."""
    text = text.strip()
    if "." in text:
        raise argparse.ArgumentTypeError(
            f"{text!r}: decimal floats are not accepted, use p/q")
    try:
        if "/" in text:
            p, q = text.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}")


def _load_instance(path: str) -> Instance:
    return parse_instance(Path(path).read_bytes())


def _solve_one(inst: Instance, alg: str, eps: Optional[Fraction], c: Optional[int],
               node_budget: int, state_budget: int) -> dict:
    """Run one algorithm and return its report record."""
    record: dict = {"algorithm": alg, "n": inst.n,
                    "grid": inst.grid,
                    "volume_lower_bound": lower_bound_volume(inst)}
    start = time.perf_counter()
    packing = None
    if alg in heuristics.ALGORITHMS:
        packing = heuristics.solve_heuristic(inst, alg)
    elif alg == "partition":
        if eps is None:
            raise PackLabError("--eps is required for --alg partition")
        outcome = algorithm_b(inst, eps, node_budget=node_budget)
        packing = outcome.packing
        record["fallback"] = outcome.fallback
        if outcome.plan is not None:
            record["plan"] = outcome.plan.report_obj()
    elif alg == "dp":
        if eps is None or c is None:
            raise PackLabError("--eps and --c are required for --alg dp")
        result = leveldp.solve_rounded(inst, eps, c, state_budget)
        packing = result.packing
        record["opened"] = result.regular_bins_opened
        record["state_count"] = result.states_visited
    elif alg == "exact":
        record["opt"] = oracle.exact_opt(inst, node_budget)
    else:
        raise PackLabError(f"unknown algorithm {alg!r}")
    elapsed = time.perf_counter() - start
    if packing is not None:
        report = validate_packing(inst, packing)
        record["bins_opened"] = packing.bins_opened
        record["valid"] = report.ok
        if not report.ok:
            record["violation"] = report.reason
        lb = record["volume_lower_bound"]
        if lb > 0:
            record["ratio_vs_volume"] = str(Fraction(packing.bins_opened, lb))
    print(f"{alg}: {elapsed:.3f}s", file=sys.stderr)
    return record


def _write_report(records: list[dict], out: Optional[str],
                  csv_path: Optional[str]) -> None:
    report = {"schema": REPORT_SCHEMA, "results": records}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    if csv_path:
        fields = ["instance", "algorithm", "n", "bins_opened",
                  "volume_lower_bound", "ratio_vs_volume", "valid"]
        with open(csv_path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields, extrasaction="ignore")
            writer.writeheader()
            for rec in records:
                writer.writerow(rec)


def cmd_gen(args) -> int:
    if args.clustered:
        base = [int(x) for x in args.clustered.split(",")]
        inst = generator.generate_clustered(args.grid, base, args.copies,
                                            bins=args.bins)
    else:
        params = generator.GeneratorParams(args.grid, args.n, args.min_num,
                                           args.max_num, bins=args.bins,
                                           allow_empty=args.allow_empty)
        inst = generator.generate(params, args.seed)
    from .core import instance_to_json
    text = instance_to_json(inst) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    record = _solve_one(inst, args.alg, args.eps, args.c,
                        args.node_budget, args.state_budget)
    record["instance"] = args.instance
    _write_report([record], args.out, args.csv)
    return 0 if record.get("valid", True) else 1


def cmd_bench(args) -> int:
    algs = args.algs.split(",")
    for alg in algs:
        if alg not in ALGS:
            raise PackLabError(f"unknown algorithm {alg!r}")
    records = []
    ok = True
    for path in args.instances:
        inst = _load_instance(path)
        for alg in algs:
            rec = _solve_one(inst, alg, args.eps, args.c,
                             args.node_budget, args.state_budget)
            rec["instance"] = path
            records.append(rec)
            ok = ok and rec.get("valid", True)
    _write_report(records, args.out, args.csv)
    return 0 if ok else 1


def _check(name: str, condition: bool, failures: list[str]) -> None:
    status = "PASS" if condition else "FAIL"
    print(f"[{status}] {name}")
    if not condition:
        failures.append(name)


def cmd_verify(args) -> int:
    """Seeded invariant battery; a cut-down mirror of the test suite."""
    if args.suite != "bounds":
        raise PackLabError(f"unknown suite {args.suite!r}")
    failures: list[str] = []
    params = generator.GeneratorParams(grid=20, n=10, min_num=1, max_num=20)

    all_valid = True
    ff_le_nf = True
    chain_ok = True
    for seed in range(100):
        inst = generator.generate(params, seed)
        packs = {alg: heuristics.solve_heuristic(inst, alg)
                 for alg in heuristics.ALGORITHMS}
        for p in packs.values():
            all_valid = all_valid and validate_packing(inst, p).ok
        ff_le_nf = ff_le_nf and packs["ff"].bins_opened <= packs["nf"].bins_opened
        opt = oracle.exact_opt(inst)
        lb = lower_bound_volume(inst)
        in_range = all(lb <= opt <= p.bins_opened for p in packs.values())
        ffd_ok = 9 * packs["ffd"].bins_opened <= 11 * opt + 9
        ff_ok = 10 * packs["ff"].bins_opened <= 17 * opt + 10
        chain_ok = chain_ok and in_range and ffd_ok and ff_ok
    _check("heuristic packings valid (100 instances)", all_valid, failures)
    _check("FF <= NF (100 instances)", ff_le_nf, failures)
    _check("volume <= OPT <= heuristic, FFD/FF ratio bounds", chain_ok, failures)

    dp_ok = True
    for seed in range(30):
        inst = generator.generate_on_delta_grid(8, 8, Fraction(1, 4), seed)
        result = leveldp.solve(inst, Fraction(1, 4))
        dp_ok = dp_ok and result.regular_bins_opened == oracle.exact_opt(inst)
        dp_ok = dp_ok and validate_packing(inst, result.packing).ok
    _check("level DP matches exact OPT (30 gridded instances)", dp_ok, failures)

    oracle_ok = True
    small = generator.GeneratorParams(grid=20, n=8, min_num=1, max_num=20)
    for seed in range(50):
        inst = generator.generate(small, seed)
        oracle_ok = oracle_ok and (oracle.exact_opt(inst)
                                   == oracle.exhaustive_opt(inst))
    _check("branch-and-bound equals exhaustive oracle (50 instances)",
           oracle_ok, failures)

    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packlab", description="bin-packing algorithms laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate an instance file")
    p_gen.add_argument("--n", type=int, default=0)
    p_gen.add_argument("--grid", type=int, default=100)
    p_gen.add_argument("--min-num", type=int, default=1,
                       help="smallest size numerator over the grid")
    p_gen.add_argument("--max-num", type=int, default=100)
    p_gen.add_argument("--bins", type=int, default=None)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--clustered", type=str, default=None,
                       help="comma-separated base numerators to replicate")
    p_gen.add_argument("--allow-empty", action="store_true")
    p_gen.add_argument("--copies", type=int, default=1)
    p_gen.add_argument("--out", type=str, default=None)
    p_gen.set_defaults(func=cmd_gen)

    def add_solver_flags(p):
        p.add_argument("--eps", type=parse_rational, default=None)
        p.add_argument("--c", type=int, default=None)
        p.add_argument("--node-budget", type=int, default=200_000)
        p.add_argument("--state-budget", type=int, default=5_000_000)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--csv", type=str, default=None)

    p_solve = sub.add_parser("solve", help="run one algorithm on an instance")
    p_solve.add_argument("--alg", choices=ALGS, required=True)
    p_solve.add_argument("--instance", required=True)
    add_solver_flags(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="run several algorithms on instances")
    p_bench.add_argument("--algs", type=str, default="nf,ff,bf,nfd,ffd,bfd")
    p_bench.add_argument("instances", nargs="+")
    add_solver_flags(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_verify = sub.add_parser("verify", help="run the invariant battery")
    p_verify.add_argument("--suite", type=str, default="bounds")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PackLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
