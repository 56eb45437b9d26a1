"""Command-line pipeline around the extraction, clustering and labeling stages.

Verbs
-----
extract   images -> feature CSV (segmentation, largest component, moments)
table1    emit the bundled 20-sample larvae feature table (optionally
          triplicated to the 60-item cross-validation set and normalized)
cluster   feature CSV -> placement CSVs + JSON manifest (+ PGM snapshots)
classify  placement -> predictions CSV + accuracy, k-NN over marker ids
synth     generate a labeled synthetic feature CSV
scatter   project two feature columns to id,x,y,label for plotting

Exit codes: 0 success, 1 partial per-file failure (extract), 2 invalid
configuration or arguments.

Configuration: flat ``key=value`` lines, ``#`` comments; the file named by
``--config`` (or the STIGMERGIA_CONFIG environment variable) supplies
defaults that explicit command-line flags override.  Every command is a
pure function of its inputs, flags and seed: reruns write byte-identical
files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from .csvio import (
    FeatureTable,
    feature_table_text,
    read_feature_table,
    read_placement,
    scatter_csv_text,
    write_feature_table,
    write_placement,
    write_predictions,
    write_scatter,
)
from .datasets import FEATURE_NAMES, larvae_rows, make_synthetic, triplicate
from .errors import StigmergiaError
from .knn import Placement, PlacementEntry, accuracy, knn_classify
from .moments import hu_features, log_normalize, minmax_normalize
from .pgm import PnmFormatError, read_image, write_grey
from .segmentation import segment
from .swarm import Params, run, spatial_entropy

MANIFEST_FORMAT = "stigmergia-run/1"


class UsageError(Exception):
    """Bad arguments or configuration; maps to exit code 2."""


# config keys and their parsers; anything else in a config file is a typo
_CONFIG_KEYS = {
    "k1": float,
    "k2": float,
    "evap_k": float,
    "eta": float,
    "deposit_a": float,
    "beta": float,
    "sensory_delta": float,
    "crowd_theta": float,
    "steepness": int,
    "t_max": int,
    "n_ants": int,
    "grid_rows": int,
    "grid_cols": int,
    "seed": int,
    "snapshot_every": int,
    "block_size": int,
    "k": int,
    "markers": str,
    "classes": int,
    "per_class": int,
    "features": int,
    "separation": float,
    "jitter": float,
}

_PARAM_KEYS = (
    "k1", "k2", "evap_k", "eta", "deposit_a", "beta", "sensory_delta",
    "crowd_theta", "steepness", "t_max", "n_ants", "grid_rows", "grid_cols",
    "seed",
)


def load_config(path: str | None) -> dict:
    """Parse a key=value config file into typed values."""
    if path is None:
        return {}
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"config file not found: {path}")
    out = {}
    for ln, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value, got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{ln}: unknown config key {key!r}")
        try:
            out[key] = _CONFIG_KEYS[key](val)
        except ValueError as e:
            raise UsageError(f"{path}:{ln}: bad value for {key}: {e}") from None
    return out


def _resolve(args, cfg: dict, key: str, default):
    """Flag value if given, else config value, else default."""
    v = getattr(args, key, None)
    if v is not None:
        return v
    return cfg.get(key, default)


def _build_params(args, cfg: dict) -> Params:
    defaults = Params()
    fields = {k: _resolve(args, cfg, k, getattr(defaults, k)) for k in _PARAM_KEYS}
    try:
        return Params(**fields)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _parse_markers(text: str) -> tuple:
    try:
        a, b = text.split("-", 1)
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"markers must be a lo-hi id range, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty marker range {text!r}")
    return lo, hi


def _out_stream_or_file(table: FeatureTable, out: str | None) -> None:
    if out is None:
        sys.stdout.write(feature_table_text(table))
    else:
        write_feature_table(out, table)


# ---------------------------------------------------------------------------
# verbs


def cmd_extract(args, cfg: dict) -> int:
    polarity = {"auto": None, "dark": True, "light": False}[args.object]
    rows, sources = [], []
    failures = 0
    for path in args.images:
        try:
            grey = read_image(path)
            mask = segment(grey, object_is_dark=polarity)
            hu = hu_features(mask)
            if args.log_normalize:
                hu = log_normalize(hu)
            rows.append(tuple(hu))
            sources.append(path)
        except (StigmergiaError, PnmFormatError, OSError, ValueError) as e:
            print(f"extract: {path}: {e}", file=sys.stderr)
            failures += 1
    table = FeatureTable(
        names=FEATURE_NAMES,
        values=np.array(rows, dtype=np.float64) if rows else np.zeros((0, 7)),
        sources=tuple(sources),
    )
    _out_stream_or_file(table, args.out)
    return 1 if failures else 0


def cmd_table1(args, cfg: dict) -> int:
    rows = larvae_rows()
    if args.triplicate:
        rows = triplicate(rows)
    values = np.array([r.features for r in rows], dtype=np.float64)
    if args.normalize:
        values = minmax_normalize(values)
    table = FeatureTable(
        names=FEATURE_NAMES,
        values=values,
        ids=tuple(r.id for r in rows),
        labels=tuple(r.label for r in rows),
    )
    _out_stream_or_file(table, args.out)
    return 0


def _load_manifest(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            m = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read manifest {path}: {e}") from None
    if m.get("format") != MANIFEST_FORMAT:
        raise UsageError(f"{path}: not a {MANIFEST_FORMAT} manifest")
    return m


def _snapshot_pgm(placement: Placement, highlight: str | None) -> np.ndarray:
    img = np.zeros((placement.grid_rows, placement.grid_cols), dtype=np.uint8)
    for e in placement.entries:
        lit = highlight is not None and e.label == highlight
        img[e.row, e.col] = 255 if lit else 128
    return img


def cmd_cluster(args, cfg: dict) -> int:
    if args.replay:
        manifest = _load_manifest(args.replay)
        input_path = manifest["input_file"]
        if _sha256(input_path) != manifest["input_sha256"]:
            raise UsageError(
                f"{input_path} changed since the manifest was written; refusing to replay"
            )
        mp = dict(manifest["params"])
        mp["direction_kernel"] = tuple(mp.get("direction_kernel", ()))
        try:
            p = Params(**mp)
        except (TypeError, ValueError) as e:
            raise UsageError(f"bad params in manifest: {e}") from None
        snapshot_every = manifest.get("snapshot_every")
        block_size = manifest["block_size"]
        highlight = manifest.get("highlight_label")
        want_pgm = bool(manifest.get("class_pixel_values"))
    else:
        if args.features_csv is None:
            raise UsageError("cluster needs a features CSV (or --replay MANIFEST)")
        input_path = args.features_csv
        p = _build_params(args, cfg)
        snapshot_every = _resolve(args, cfg, "snapshot_every", None)
        block_size = _resolve(args, cfg, "block_size", 3)
        highlight = args.highlight_label
        want_pgm = args.pgm_snapshots

    try:
        table = read_feature_table(input_path)
    except OSError as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(f"malformed features CSV: {e}") from None

    if table.n_rows == 0:
        print("cluster: no items in input; writing an empty placement", file=sys.stderr)

    try:
        result = run(
            table.values,
            p,
            snapshot_every=snapshot_every,
            item_ids=table.effective_ids(),
            labels=table.labels,
        )
    except ValueError as e:  # out-of-box features, mismatched column counts
        raise UsageError(f"{input_path}: {e}") from None

    outdir = Path(args.out if args.out is not None else "cluster_out")
    outdir.mkdir(parents=True, exist_ok=True)

    snap_meta = []
    for step, placement in result.snapshots:
        fname = f"placement_t{step}.csv"
        write_placement(outdir / fname, placement)
        entropy = spatial_entropy(placement, block_size) if placement.entries else None
        meta = {"step": step, "file": fname, "entropy": entropy}
        if want_pgm:
            pgm_name = f"snapshot_t{step}.pgm"
            write_grey(outdir / pgm_name, _snapshot_pgm(placement, highlight))
            meta["image"] = pgm_name
        snap_meta.append(meta)

    manifest = {
        "format": MANIFEST_FORMAT,
        "params": {
            **{k: getattr(p, k) for k in _PARAM_KEYS},
            "direction_kernel": list(p.direction_kernel),
        },
        "seed": p.seed,
        "input_file": str(input_path),
        "input_sha256": _sha256(input_path),
        "n_items": table.n_rows,
        "snapshot_every": snapshot_every,
        "block_size": block_size,
        "snapshots": snap_meta,
        "final_file": snap_meta[-1]["file"],
    }
    if want_pgm:
        labels = sorted({e.label for _, pl in result.snapshots for e in pl.entries
                         if e.label is not None})
        manifest["highlight_label"] = highlight
        manifest["class_pixel_values"] = {
            "": 0,
            **{lab: (255 if lab == highlight else 128) for lab in labels},
        }
    with open(outdir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    final_entropy = snap_meta[-1]["entropy"]
    print(f"clustered {table.n_rows} items in {p.t_max} steps; "
          f"final entropy {final_entropy}; wrote {outdir}/manifest.json")
    return 0


def cmd_classify(args, cfg: dict) -> int:
    target = Path(args.placements)
    manifest = None
    if target.is_dir():
        manifest = _load_manifest(target / "manifest.json")
        csv_path = target / manifest["final_file"]
    else:
        csv_path = target
        if args.manifest is not None:
            manifest = _load_manifest(args.manifest)
        elif (target.parent / "manifest.json").is_file():
            manifest = _load_manifest(target.parent / "manifest.json")

    if args.grid_rows is not None and args.grid_cols is not None:
        rows, cols = args.grid_rows, args.grid_cols
    elif manifest is not None:
        rows = manifest["params"]["grid_rows"]
        cols = manifest["params"]["grid_cols"]
    else:
        raise UsageError(
            "grid dimensions unknown: pass --grid-rows/--grid-cols or --manifest"
        )

    k = _resolve(args, cfg, "k", 3)
    lo, hi = _parse_markers(_resolve(args, cfg, "markers", "1-20"))

    try:
        placement = read_placement(csv_path, rows, cols)
    except (OSError, ValueError) as e:
        raise UsageError(str(e)) from None

    truth = {}
    entries = []
    for e in placement.entries:
        if lo <= e.item_id <= hi:
            if e.label is None:
                raise UsageError(f"marker {e.item_id} has no label in {csv_path}")
            entries.append(e)
        else:
            if e.label is not None:
                truth[e.item_id] = e.label
            entries.append(PlacementEntry(e.item_id, e.row, e.col, None))
    eval_placement = Placement(entries=tuple(entries), grid_rows=rows, grid_cols=cols)

    results = knn_classify(eval_placement, k)
    predicted = dict(results)

    if truth:
        scored = {i: predicted[i] for i in truth}
        acc = accuracy(scored, truth)
        n_right = sum(1 for i in truth if predicted[i] == truth[i])
        print(f"accuracy: {acc} ({n_right}/{len(truth)})")
    else:
        acc = None
        print("accuracy: n/a (no ground-truth labels outside the marker range)")

    if args.out is not None:
        correct = {
            i: (predicted[i] == truth[i]) if i in truth else None for i, _ in results
        }
        write_predictions(
            args.out,
            results,
            {i: truth.get(i, "") for i, _ in results},
            correct,
        )
    return 0


def cmd_synth(args, cfg: dict) -> int:
    n_classes = _resolve(args, cfg, "classes", 4)
    per_class = _resolve(args, cfg, "per_class", 200)
    n_features = _resolve(args, cfg, "features", 7)
    separation = _resolve(args, cfg, "separation", 0.8)
    jitter = _resolve(args, cfg, "jitter", 0.05)
    seed = _resolve(args, cfg, "seed", 0)
    try:
        values, ids, labels = make_synthetic(
            n_classes=n_classes,
            per_class=per_class,
            n_features=n_features,
            separation=separation,
            jitter=jitter,
            seed=seed,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    table = FeatureTable(
        names=tuple(f"f{i}" for i in range(1, n_features + 1)),
        values=values,
        ids=tuple(int(i) for i in ids),
        labels=labels,
    )
    _out_stream_or_file(table, args.out)
    return 0


def cmd_scatter(args, cfg: dict) -> int:
    try:
        table = read_feature_table(args.features_csv)
    except OSError as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(f"malformed features CSV: {e}") from None
    xs = table.column(args.x)
    ys = table.column(args.y)
    ids = table.effective_ids()
    labels = table.labels if table.labels is not None else (None,) * table.n_rows
    if args.out is None:
        sys.stdout.write(scatter_csv_text(ids, xs, ys, labels))
    else:
        write_scatter(args.out, ids, xs, ys, labels)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sp, *, seed=False, snapshot=False):
    sp.add_argument("--config", help="key=value config file (overrides STIGMERGIA_CONFIG)")
    sp.add_argument("--out", help="output path (CSV verbs default to stdout)")
    if seed:
        sp.add_argument("--seed", type=int, help="64-bit RNG seed")
    if snapshot:
        sp.add_argument("--snapshot-every", type=int, dest="snapshot_every",
                        help="write an intermediate placement every N steps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stigmergia",
        description="shape features, ant-colony clustering, and grid k-NN labeling",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("extract", help="PGM/PPM images to a feature CSV")
    sp.add_argument("images", nargs="+", help="input Netpbm images")
    sp.add_argument("--log-normalize", action="store_true",
                    help="apply the signed-log squash to each component")
    sp.add_argument("--object", choices=("auto", "dark", "light"), default="auto",
                    help="which side of the threshold is the object (default auto)")
    _add_common(sp)
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("table1", help="emit the bundled larvae feature table")
    sp.add_argument("--triplicate", action="store_true",
                    help="emit 60 rows: ids 21-40 and 41-60 copy rows 1-20")
    sp.add_argument("--normalize", action="store_true",
                    help="min-max normalize each column over the emitted set")
    _add_common(sp)
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("cluster", help="run the ant clustering on a feature CSV")
    sp.add_argument("features_csv", nargs="?", help="input feature CSV (values in [0,1])")
    sp.add_argument("--replay", metavar="MANIFEST",
                    help="re-run exactly as recorded in a previous manifest")
    for key in ("k1", "k2", "evap_k", "eta", "deposit_a", "beta",
                "sensory_delta", "crowd_theta"):
        sp.add_argument(f"--{key.replace('_', '-')}", type=float, dest=key)
    for key in ("steepness", "t_max", "n_ants", "grid_rows", "grid_cols"):
        sp.add_argument(f"--{key.replace('_', '-')}", type=int, dest=key)
    sp.add_argument("--block-size", type=int, dest="block_size",
                    help="entropy tile width (default 3)")
    sp.add_argument("--pgm-snapshots", action="store_true",
                    help="also write PGM grid images per snapshot")
    sp.add_argument("--highlight-label", help="class rendered 255 in PGM snapshots")
    _add_common(sp, seed=True, snapshot=True)
    sp.set_defaults(func=cmd_cluster)

    sp = sub.add_parser("classify", help="k-NN label a placement from marker items")
    sp.add_argument("placements", help="placement CSV or a cluster output directory")
    sp.add_argument("--manifest", help="run manifest (for grid dimensions)")
    sp.add_argument("--grid-rows", type=int, dest="grid_rows")
    sp.add_argument("--grid-cols", type=int, dest="grid_cols")
    sp.add_argument("--k", type=int, dest="k", help="odd neighbour count (default 3)")
    sp.add_argument("--markers", help="inclusive labeled id range, like 1-20")
    _add_common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("synth", help="generate a labeled synthetic feature CSV")
    sp.add_argument("--classes", type=int, dest="classes")
    sp.add_argument("--per-class", type=int, dest="per_class")
    sp.add_argument("--features", type=int, dest="features")
    sp.add_argument("--separation", type=float, dest="separation")
    sp.add_argument("--jitter", type=float, dest="jitter")
    _add_common(sp, seed=True)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("scatter", help="project two feature columns for plotting")
    sp.add_argument("features_csv")
    sp.add_argument("--x", required=True, help="x column name")
    sp.add_argument("--y", required=True, help="y column name")
    _add_common(sp)
    sp.set_defaults(func=cmd_scatter)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config if args.config is not None
                          else os.environ.get("STIGMERGIA_CONFIG"))
        return args.func(args, cfg)
    except UsageError as e:
        print(f"stigmergia: {e}", file=sys.stderr)
        return 2
    except StigmergiaError as e:
        print(f"stigmergia: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
