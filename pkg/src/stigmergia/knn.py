"""Position-based k-nearest-neighbour classification on a toroidal grid.

After clustering, every item sits at a distinct grid cell.  Items whose class
is known act as markers; each unlabeled item takes the majority label of its
k nearest markers under toroidal Euclidean distance (both grid axes wrap).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import EvenKError, IdMismatchError, NotEnoughMarkersError


@dataclass(frozen=True)
class PlacementEntry:
    item_id: int
    row: int
    col: int
    label: str | None = None


@dataclass(frozen=True)
class Placement:
    """Final item positions on a grid; at most one item per cell."""

    entries: tuple[PlacementEntry, ...]
    grid_rows: int
    grid_cols: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen: set[tuple[int, int]] = set()
        for e in self.entries:
            if not (0 <= e.row < self.grid_rows and 0 <= e.col < self.grid_cols):
                raise ValueError(f"item {e.item_id} at ({e.row}, {e.col}) is out of bounds")
            if (e.row, e.col) in seen:
                raise ValueError(f"two items share cell ({e.row}, {e.col})")
            seen.add((e.row, e.col))

    def labeled(self) -> list[PlacementEntry]:
        return [e for e in self.entries if e.label is not None]

    def unlabeled(self) -> list[PlacementEntry]:
        return [e for e in self.entries if e.label is None]


def toroidal_distance(a: tuple[int, int], b: tuple[int, int], dims: tuple[int, int]) -> float:
    """Euclidean distance with wrap-around on both axes."""
    rows, cols = dims
    dr = abs(a[0] - b[0])
    dc = abs(a[1] - b[1])
    dr = min(dr, rows - dr)
    dc = min(dc, cols - dc)
    return math.sqrt(dr * dr + dc * dc)


def knn_classify(p: Placement, k: int) -> list[tuple[int, str]]:
    """Predict a label for every unlabeled item from its k nearest markers.

    k must be odd (no vote ties with two classes).  Marker distance ties are
    broken by smaller marker id; a >2-class vote tie goes to the tied class
    containing the smallest-id voter.  Returns (item_id, label) pairs in
    item-id order.
    """
    if k <= 0 or k % 2 == 0:
        raise EvenKError(f"k must be a positive odd number, got {k}")
    markers = p.labeled()
    if len(markers) < k:
        raise NotEnoughMarkersError(f"need at least k={k} labeled markers, have {len(markers)}")
    dims = (p.grid_rows, p.grid_cols)

    out = []
    for e in sorted(p.unlabeled(), key=lambda e: e.item_id):
        ranked = sorted(
            markers,
            key=lambda m: (toroidal_distance((e.row, e.col), (m.row, m.col), dims), m.item_id),
        )
        votes = ranked[:k]
        counts = Counter(m.label for m in votes)
        top = max(counts.values())
        tied = {label for label, c in counts.items() if c == top}
        winner = min((m for m in votes if m.label in tied), key=lambda m: m.item_id).label
        out.append((e.item_id, winner))
    return out


def accuracy(predicted: dict[int, str], truth: dict[int, str]) -> float:
    """Fraction of ids whose predicted label matches the true one."""
    if set(predicted) != set(truth):
        raise IdMismatchError("predicted and truth id sets differ")
    if not truth:
        raise IdMismatchError("empty id sets have no accuracy")
    hits = sum(1 for i, lab in predicted.items() if truth[i] == lab)
    return hits / len(truth)
