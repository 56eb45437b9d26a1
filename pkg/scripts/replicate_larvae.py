#!/usr/bin/env python3
"""Larvae identification benchmark: cluster the triplicated 60-item table,
then k-NN label the copies from the 20 originals, across many seeds.

Prints one row per (seed, k) with the accuracy and wall time, then the
median accuracy per k.  Optionally dumps each final placement as CSV.
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from stigmergia.csvio import write_placement
from stigmergia.datasets import larvae_rows, triplicate
from stigmergia.knn import Placement, PlacementEntry, accuracy, knn_classify
from stigmergia.moments import minmax_normalize
from stigmergia.swarm import Params, run


def parse_seeds(text):
    if "," in text or "-" not in text:
        return [int(s) for s in text.split(",")]
    lo, hi = text.split("-", 1)
    return list(range(int(lo), int(hi) + 1))


def evaluate(placement, k, marker_hi=20):
    """Strip labels outside the marker range, classify, score."""
    entries = []
    truth = {}
    for e in placement.entries:
        if e.item_id <= marker_hi:
            entries.append(e)
        else:
            truth[e.item_id] = e.label
            entries.append(PlacementEntry(e.item_id, e.row, e.col, None))
    masked = Placement(tuple(entries), placement.grid_rows, placement.grid_cols)
    predicted = dict(knn_classify(masked, k))
    return accuracy({i: predicted[i] for i in truth}, truth)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", default="1-11",
                    help="comma list or lo-hi range (default 1-11)")
    ap.add_argument("--k", default="3,1", help="comma list of odd k values")
    ap.add_argument("--t-max", type=int, default=1_000_000, dest="t_max")
    ap.add_argument("--outdir", help="also write final placements here")
    args = ap.parse_args()

    seeds = parse_seeds(args.seeds)
    ks = [int(s) for s in args.k.split(",")]
    rows = triplicate(larvae_rows())
    values = minmax_normalize(np.array([r.features for r in rows]))
    ids = [r.id for r in rows]
    labels = [r.label for r in rows]

    if args.outdir:
        Path(args.outdir).mkdir(parents=True, exist_ok=True)

    scores = {k: [] for k in ks}
    print(f"{'seed':>6} {'k':>3} {'accuracy':>9} {'seconds':>8}")
    for seed in seeds:
        p = Params(seed=seed, t_max=args.t_max)
        t0 = time.perf_counter()
        result = run(values, p, item_ids=ids, labels=labels)
        wall = time.perf_counter() - t0
        if args.outdir:
            write_placement(Path(args.outdir) / f"placement_seed{seed}.csv",
                            result.final)
        for k in ks:
            acc = evaluate(result.final, k)
            scores[k].append(acc)
            print(f"{seed:>6} {k:>3} {acc:>9.4f} {wall:>8.2f}")

    print()
    for k in ks:
        med = statistics.median(scores[k])
        perfect = sum(1 for a in scores[k] if a == 1.0)
        print(f"k={k}: median accuracy {med:.4f} over {len(seeds)} seeds, "
              f"{perfect} perfect run(s)")


if __name__ == "__main__":
    main()
