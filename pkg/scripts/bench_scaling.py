#!/usr/bin/env python3
"""Wall-time scaling of the samplers across population sizes.

Times the O(k) hash-map sampler at fixed k across three decades of n, and
the classical array sampler at small fixed k where its O(n) initialization
dominates, then prints the ratio table the two complexity claims predict:
flat for the former, linear growth for the latter.
"""

import argparse

from srswor.cli import run_bench


def median(values):
    ordered = sorted(values)
    return ordered[len(ordered) // 2]


def collect(grid, algo, reps, seed):
    by_n = {}
    for rec in run_bench(grid, [algo], reps, seed):
        by_n.setdefault(rec.n, []).append(rec.wall_time_ns)
    return {n: median(v) for n, v in by_n.items()}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=7)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sparse-k", type=int, default=1000)
    parser.add_argument("--classical-k", type=int, default=10)
    args = parser.parse_args()

    run_bench([(10000, args.sparse_k)], ["sparse"], 2, args.seed)  # warm up

    sparse_grid = [(10_000, args.sparse_k), (100_000, args.sparse_k),
                   (1_000_000, args.sparse_k)]
    sparse = collect(sparse_grid, "sparse", args.reps, args.seed)
    base = sparse[10_000]
    print(f"sparse hash-map sampler, k={args.sparse_k} (expected: flat in n)")
    print(f"  {'n':>10} {'median ns':>12} {'vs n=1e4':>9}")
    for n in sorted(sparse):
        print(f"  {n:>10} {sparse[n]:>12} {sparse[n] / base:>8.2f}x")
    spread = max(sparse.values()) / min(sparse.values())
    print(f"  max/min spread: {spread:.2f}x\n")

    classical_grid = [(10_000, args.classical_k), (100_000, args.classical_k),
                      (1_000_000, args.classical_k)]
    classical = collect(classical_grid, "fy", args.reps, args.seed + 1)
    base = classical[10_000]
    print(f"classical array sampler, k={args.classical_k} (expected: linear in n)")
    print(f"  {'n':>10} {'median ns':>12} {'vs n=1e4':>9}")
    for n in sorted(classical):
        print(f"  {n:>10} {classical[n]:>12} {classical[n] / base:>8.2f}x")


if __name__ == "__main__":
    main()
