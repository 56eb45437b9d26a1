#!/usr/bin/env python3
"""Spatial-entropy benchmark on synthetic feature classes.

Clusters a generated dataset and reports the block entropy of the item
placement before and after, per seed, with the median ratio at the end.
``--full`` switches to the large preset: 800 items on a 57x57 grid for a
million steps.
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from stigmergia.datasets import make_synthetic
from stigmergia.swarm import Params, run, spatial_entropy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--classes", type=int, default=4)
    ap.add_argument("--per-class", type=int, default=50, dest="per_class")
    ap.add_argument("--grid-rows", type=int, default=30, dest="grid_rows")
    ap.add_argument("--grid-cols", type=int, default=30, dest="grid_cols")
    ap.add_argument("--n-ants", type=int, default=6, dest="n_ants")
    ap.add_argument("--t-max", type=int, default=100_000, dest="t_max")
    ap.add_argument("--seeds", default="1,2,3,4,5",
                    help="comma list of run seeds (data seed stays 0)")
    ap.add_argument("--block-size", type=int, default=3, dest="block_size")
    ap.add_argument("--full", action="store_true",
                    help="preset: 4x200 items, 57x57 grid, 1e6 steps, seed 1")
    args = ap.parse_args()

    if args.full:
        args.per_class, args.grid_rows, args.grid_cols = 200, 57, 57
        args.t_max, args.seeds = 1_000_000, "1"

    values, ids, labels = make_synthetic(args.classes, args.per_class, seed=0)
    seeds = [int(s) for s in args.seeds.split(",")]

    ratios = []
    print(f"{'seed':>6} {'E(0)':>8} {'E(t_max)':>9} {'ratio':>7} {'seconds':>8}")
    for seed in seeds:
        p = Params(seed=seed, t_max=args.t_max, n_ants=args.n_ants,
                   grid_rows=args.grid_rows, grid_cols=args.grid_cols)
        t0 = time.perf_counter()
        result = run(values, p, item_ids=ids, labels=labels)
        wall = time.perf_counter() - t0
        e0 = spatial_entropy(result.snapshots[0][1], args.block_size)
        et = spatial_entropy(result.final, args.block_size)
        ratios.append(et / e0)
        print(f"{seed:>6} {e0:>8.4f} {et:>9.4f} {et / e0:>7.4f} {wall:>8.2f}")

    print(f"\nmedian E(t_max)/E(0): {statistics.median(ratios):.4f} "
          f"over {len(seeds)} seed(s)")


if __name__ == "__main__":
    main()
