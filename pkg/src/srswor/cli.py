"""Command line front end: sample, bench, verify, merge.

Exit codes: 0 success, 1 input/format failure, 2 argument failure,
3 verification failure.  All randomness flows from --seed, so identical
invocations reproduce identical output (bench wall times excepted).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, fields

from .distributed import MergeInput, downsample, merge_all
from .rng import RandomSource
from .samplers import (
    SparseFisherYatesIterator,
    fisher_yates_sample,
    inorder_sample,
    membership_checking_sample,
    preinit_fy_sample_with_undo,
    reservoir_sample,
    selection_sample,
)
from .suite import default_samplers, format_report, run_suite

ALGO_NAMES = ("fy", "sparse", "member", "preinit", "select", "inorder", "reservoir")

BENCH_HEADER = (
    "algorithm", "n", "k", "rep", "wall_time_ns",
    "logical_draws", "peak_aux_entries", "seed",
)


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    n: int
    k: int
    rep: int
    wall_time_ns: int
    logical_draws: int
    peak_aux_entries: int
    seed: int


def _bench_once(algo: str, n: int, k: int, source: RandomSource) -> tuple[int, int]:
    """Run one timed rep; returns (wall_time_ns, peak_aux_entries)."""
    if algo == "sparse":
        t0 = time.perf_counter_ns()
        it = SparseFisherYatesIterator(n, source)
        peak = 0
        for _ in range(k):
            next(it)
            size = it.state_size()
            if size > peak:
                peak = size
        return time.perf_counter_ns() - t0, peak
    if algo == "member":
        t0 = time.perf_counter_ns()
        membership_checking_sample(source, n, k)
        return time.perf_counter_ns() - t0, k
    if algo == "preinit":
        arr = list(range(1, n + 1))  # the pre-initialized array is not timed
        t0 = time.perf_counter_ns()
        preinit_fy_sample_with_undo(source, arr, k)
        return time.perf_counter_ns() - t0, 0
    if algo == "fy":
        runner = lambda: fisher_yates_sample(source, n, k)  # noqa: E731
    elif algo == "select":
        runner = lambda: selection_sample(source, n, k)  # noqa: E731
    elif algo == "inorder":
        runner = lambda: inorder_sample(source, n, k)  # noqa: E731
    elif algo == "reservoir":
        runner = lambda: reservoir_sample(source, range(1, n + 1), k)  # noqa: E731
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    t0 = time.perf_counter_ns()
    runner()
    return time.perf_counter_ns() - t0, 0


def run_bench(grid, algos, reps: int, seed: int) -> list[BenchRecord]:
    """Benchmark each algorithm over each (n, k) cell, reps runs per cell.

    Every run gets a fresh RandomSource seeded with seed + rep, so the same
    rep index across algorithms replays the same underlying stream and the
    draw counts in the output are exactly reproducible.
    """
    records = []
    for n, k in grid:
        for algo in algos:
            for rep in range(reps):
                run_seed = seed + rep
                source = RandomSource(run_seed)
                wall, peak = _bench_once(algo, n, k, source)
                records.append(BenchRecord(
                    algo, n, k, rep, wall, source.stats.total(), peak, run_seed,
                ))
    return records


# --- subcommands -------------------------------------------------------------


def _cmd_sample(args) -> int:
    if args.k < 0:
        print("sample: --k must be >= 0", file=sys.stderr)
        return 2
    if args.n is not None and args.n < 1:
        print("sample: --n must be >= 1", file=sys.stderr)
        return 2
    if args.n is not None and args.k > args.n:
        print(f"sample: k={args.k} exceeds n={args.n}", file=sys.stderr)
        return 2
    source = RandomSource(args.seed)

    if args.indices_only:
        if args.n is None:
            print("sample: --indices-only requires --n", file=sys.stderr)
            return 2
        sampler = default_samplers()[args.algo]
        result = sampler(source, args.n, args.k) if args.k else None
        if result is not None:
            for idx in result.indices:
                print(idx)
        return 0

    return _sample_lines(args, source)


def _sample_lines(args, source: RandomSource) -> int:
    """Line-sampling mode: in-order single pass when n is known, reservoir
    when reading a stream of unknown length."""
    path = args.input
    use_stdin = path is None or path == "-"
    if args.k == 0:
        return 0

    n = args.n
    if n is None and not use_stdin:
        try:
            with open(path, "r") as handle:
                n = sum(1 for _ in handle)
        except OSError as exc:
            print(f"sample: cannot read {path}: {exc}", file=sys.stderr)
            return 1
        if args.k > n:
            print(f"sample: k={args.k} exceeds inferred n={n}", file=sys.stderr)
            return 2

    try:
        handle = sys.stdin if use_stdin else open(path, "r")
    except OSError as exc:
        print(f"sample: cannot read {path}: {exc}", file=sys.stderr)
        return 1
    try:
        if n is None:
            pairs = reservoir_sample(source, enumerate(handle, 1), args.k).indices
            for _, line in sorted(pairs):
                sys.stdout.write(line)
            return 0
        positions = inorder_sample(source, n, args.k).indices
        emitted = 0
        want = positions[0]
        for lineno, line in enumerate(handle, 1):
            if lineno == want:
                sys.stdout.write(line)
                emitted += 1
                if emitted == len(positions):
                    return 0
                want = positions[emitted]
        print(
            f"sample: input ended before position {want} "
            f"(expected {n} lines)",
            file=sys.stderr,
        )
        return 1
    finally:
        if not use_stdin:
            handle.close()


def _cmd_bench(args) -> int:
    grid = []
    try:
        for cell in args.grid.split(","):
            n_text, k_text = cell.split(":")
            grid.append((int(n_text), int(k_text)))
    except ValueError:
        print(f"bench: cannot parse --grid {args.grid!r}", file=sys.stderr)
        return 2
    algos = args.algos.split(",")
    for algo in algos:
        if algo not in ALGO_NAMES:
            print(f"bench: unknown algorithm {algo!r}", file=sys.stderr)
            return 2
    for n, k in grid:
        if n < 1 or not 0 <= k <= n:
            print(f"bench: invalid cell n={n}, k={k}", file=sys.stderr)
            return 2
    if args.reps < 1:
        print("bench: --reps must be >= 1", file=sys.stderr)
        return 2
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for rec in run_bench(grid, algos, args.reps, args.seed):
        writer.writerow([getattr(rec, f.name) for f in fields(BenchRecord)])
    return 0


def _cmd_verify(args) -> int:
    records = run_suite(args.suite, args.seed, args.alpha)
    for line in format_report(records):
        print(line)
    if args.json is not None:
        payload = [
            {
                "name": r.name,
                "statistic": r.statistic,
                "p_value": r.p_value,
                "pass": r.passed,
            }
            for r in records
        ]
        with open(args.json, "w") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
    failures = [r.name for r in records if not r.passed]
    if failures:
        print(f"verify: {len(failures)} check(s) failed:", file=sys.stderr)
        for name in failures:
            print(f"  {name}", file=sys.stderr)
        return 3
    return 0


def _cmd_merge(args) -> int:
    try:
        with open(args.manifest, "r") as handle:
            raw_lines = handle.readlines()
    except OSError as exc:
        print(f"merge: cannot read {args.manifest}: {exc}", file=sys.stderr)
        return 1

    inputs = []
    for lineno, raw in enumerate(raw_lines, 1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            print(
                f"merge: manifest line {lineno}: expected "
                f"population<TAB>size<TAB>ids, got {len(parts)} field(s)",
                file=sys.stderr,
            )
            return 1
        try:
            population = int(parts[0])
            size = int(parts[1])
        except ValueError:
            print(
                f"merge: manifest line {lineno}: non-integer population or size",
                file=sys.stderr,
            )
            return 1
        ids = parts[2].split(",") if parts[2] else []
        if len(ids) != size:
            print(
                f"merge: manifest line {lineno}: declared size {size} but "
                f"{len(ids)} identifier(s)",
                file=sys.stderr,
            )
            return 1
        if population < 1 or size < 0 or size > population:
            print(
                f"merge: manifest line {lineno}: invalid sizes "
                f"k={size}, n={population}",
                file=sys.stderr,
            )
            return 1
        if len(set(ids)) != len(ids):
            print(
                f"merge: manifest line {lineno}: duplicate identifiers",
                file=sys.stderr,
            )
            return 1
        inputs.append(MergeInput(ids, population))
    if not inputs:
        print("merge: manifest holds no shards", file=sys.stderr)
        return 1

    source = RandomSource(args.seed)
    merged, _ = merge_all(source, inputs)
    if args.target is not None:
        if not 0 <= args.target <= len(merged):
            print(
                f"merge: --target {args.target} outside [0, {len(merged)}]",
                file=sys.stderr,
            )
            return 2
        merged = downsample(source, merged, args.target)
    for item in merged:
        print(item)
    print(f"# effective_size={len(merged)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srswor",
        description="Simple random sampling without replacement toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw one sample of k items")
    p.add_argument("--n", type=int, default=None,
                   help="population size (inferred from a file when omitted)")
    p.add_argument("--k", type=int, required=True, help="sample size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", choices=ALGO_NAMES, default="sparse",
                   help="algorithm for --indices-only mode")
    p.add_argument("--indices-only", action="store_true",
                   help="print indices instead of sampling input lines")
    p.add_argument("input", nargs="?", default=None,
                   help="line file to sample from, '-' or absent for stdin")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("bench", help="time algorithms over an n:k grid")
    p.add_argument("--grid", required=True, help="comma list of n:k cells")
    p.add_argument("--algos", default=",".join(ALGO_NAMES),
                   help="comma list of algorithms")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="run the statistical verification suite")
    p.add_argument("--suite", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.001)
    p.add_argument("--json", default=None,
                   help="also write the report as JSON to this path")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("merge", help="merge per-shard samples from a manifest")
    p.add_argument("--manifest", required=True,
                   help="lines of population<TAB>size<TAB>comma-separated-ids")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", type=int, default=None,
                   help="downsample the merged result to this size")
    p.set_defaults(func=_cmd_merge)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
