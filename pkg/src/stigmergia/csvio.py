"""CSV schemas shared by the pipeline stages.

All files are UTF-8, comma-separated, one header row, LF line endings.
Floats are rendered with ``repr``: the shortest string that parses back to
the identical double, so writing and re-reading is lossless and a fixed
input yields byte-identical output.

Schemas:

* feature table: optional ``id``, feature columns (any names not otherwise
  reserved), optional ``label``, optional ``source``; ids default to the
  1-based row number on read.
* placement:    ``id,row,col,label``
* predictions:  ``id,predicted,truth,correct`` (correct rendered 1/0)
* scatter:      ``id,x,y,label``
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, UnknownColumnError
from .knn import Placement, PlacementEntry

_RESERVED = ("id", "label", "source")


def fmt(x) -> str:
    """Canonical text for one CSV cell."""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


@dataclass(frozen=True)
class FeatureTable:
    """In-memory feature CSV: n rows of F named real features.

    ``ids``, ``labels`` and ``sources`` are per-row optional columns (None
    when absent altogether).  Extraction output carries sources but no ids,
    so listing the same image twice yields two identical rows; readers
    assign row numbers as ids when the column is missing.
    """

    names: tuple
    values: np.ndarray
    ids: tuple | None = None
    labels: tuple | None = None
    sources: tuple | None = None

    def __post_init__(self):
        n = self.values.shape[0]
        if self.values.ndim != 2 or self.values.shape[1] != len(self.names):
            raise DimensionMismatchError(
                f"feature block {self.values.shape} does not match "
                f"{len(self.names)} names"
            )
        for col, what in ((self.ids, "ids"), (self.labels, "labels"), (self.sources, "sources")):
            if col is not None and len(col) != n:
                raise DimensionMismatchError(f"{what} length mismatch")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    def effective_ids(self) -> tuple:
        return self.ids if self.ids is not None else tuple(range(1, self.n_rows + 1))

    def column(self, name: str) -> np.ndarray:
        if name not in self.names:
            raise UnknownColumnError(
                f"no column {name!r}; have {', '.join(self.names)}"
            )
        return self.values[:, self.names.index(name)]


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def feature_table_text(table: FeatureTable) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    header = []
    if table.ids is not None:
        header.append("id")
    header.extend(table.names)
    if table.labels is not None:
        header.append("label")
    if table.sources is not None:
        header.append("source")
    w.writerow(header)
    for i in range(table.n_rows):
        row = [] if table.ids is None else [fmt(table.ids[i])]
        row.extend(fmt(v) for v in table.values[i])
        if table.labels is not None:
            row.append(table.labels[i] if table.labels[i] is not None else "")
        if table.sources is not None:
            row.append(table.sources[i])
        w.writerow(row)
    return buf.getvalue()


def write_feature_table(path, table: FeatureTable) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(feature_table_text(table))


def read_feature_table(path) -> FeatureTable:
    """Parse a feature CSV; rows without an id column get ids 1..n."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file, expected a header row")
    header = rows[0]
    names = tuple(h for h in header if h not in _RESERVED)
    has_id = "id" in header
    has_label = "label" in header
    has_source = "source" in header
    idx = {h: i for i, h in enumerate(header)}

    ids, labels, sources = [], [], []
    values = []
    for ln, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ValueError(f"{path}:{ln}: expected {len(header)} cells, got {len(row)}")
        ids.append(int(row[idx["id"]]) if has_id else len(ids) + 1)
        values.append([float(row[idx[n]]) for n in names])
        if has_label:
            labels.append(row[idx["label"]] or None)
        if has_source:
            sources.append(row[idx["source"]])
    block = np.array(values, dtype=np.float64) if values else np.zeros((0, len(names)))
    return FeatureTable(
        names=names,
        values=block,
        ids=tuple(ids),
        labels=tuple(labels) if has_label else None,
        sources=tuple(sources) if has_source else None,
    )


def placement_csv_text(placement: Placement) -> str:
    """Render a placement to CSV text (used for files and byte-level tests)."""
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["id", "row", "col", "label"])
    for e in placement.entries:
        w.writerow([e.item_id, e.row, e.col, e.label if e.label is not None else ""])
    return buf.getvalue()


def write_placement(path, placement: Placement) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(placement_csv_text(placement))


def read_placement(path, grid_rows: int, grid_cols: int) -> Placement:
    """Load a placement CSV; grid dimensions come from the caller (manifest)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["id", "row", "col", "label"]:
        raise ValueError(f"{path}: expected header id,row,col,label")
    entries = []
    for ln, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 4:
            raise ValueError(f"{path}:{ln}: expected 4 cells")
        entries.append(
            PlacementEntry(
                item_id=int(row[0]),
                row=int(row[1]),
                col=int(row[2]),
                label=row[3] or None,
            )
        )
    return Placement(entries=tuple(entries), grid_rows=grid_rows, grid_cols=grid_cols)


def write_predictions(path, results, truth, correct) -> None:
    """``results`` is (id, predicted) pairs; truth/correct keyed by id.

    A None in ``correct`` (no ground truth for that id) renders as an empty
    cell rather than a spurious 0.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(["id", "predicted", "truth", "correct"])
        for item_id, predicted in results:
            c = correct[item_id]
            w.writerow([item_id, predicted, truth[item_id],
                        "" if c is None else (1 if c else 0)])


def scatter_csv_text(ids, xs, ys, labels) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["id", "x", "y", "label"])
    for i, item_id in enumerate(ids):
        w.writerow([
            item_id,
            fmt(xs[i]),
            fmt(ys[i]),
            labels[i] if labels is not None and labels[i] is not None else "",
        ])
    return buf.getvalue()


def write_scatter(path, ids, xs, ys, labels) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(scatter_csv_text(ids, xs, ys, labels))
