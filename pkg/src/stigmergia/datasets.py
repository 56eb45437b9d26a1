"""Bundled and generated datasets for the clustering experiments.

``larvae_rows`` is the 20-sample shellfish-larvae feature table (seven
log-normalized invariant-moment features per sample, two classes) that the
``table1`` CLI verb exposes.  It is embedded as literal data so the
identification experiment is hermetic: no downloads, no extraction step.

``make_synthetic`` produces labeled unit-box feature vectors with
controlled class geometry for entropy benchmarks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import Xoshiro256pp

SCALLOP_IDS = frozenset({7, 12, 14, 16, 18})

FEATURE_NAMES = ("h1", "h2", "h3", "h4", "h5", "h6", "h7")

# id: (h1..h7), four-decimal feature values.
_LARVAE = {
    1: (-8.6940, -7.9026, -12.2217, -4.9005, 0.1141, -0.198, 0.0804),
    2: (-7.9710, -5.4640, -11.8688, -3.7754, -0.2349, -0.7533, -0.0871),
    3: (-8.4007, -6.8575, -11.5683, -6.0194, -0.0865, -0.3836, 0.0658),
    4: (-9.1047, -10.4998, -12.4660, -7.8341, -0.0486, -0.2176, 0.0245),
    5: (-9.3712, -13.8080, -12.8727, -9.2301, -0.0002, -0.0028, 0.0000),
    6: (-9.0280, -9.5743, -12.4695, -8.1891, 0.0332, -0.0844, 0.0218),
    7: (-8.7786, -8.2680, -12.0012, -6.3576, -0.0683, -0.1458, -0.0551),
    8: (-9.0596, -10.4306, -12.3343, -6.8460, -0.0597, -0.2134, 0.0425),
    9: (-9.1003, -9.2379, -12.8374, -8.7028, 0.0197, 0.1318, 0.0068),
    10: (-8.8725, -9.5835, -12.0148, -5.5173, -0.1274, -0.3880, 0.0646),
    11: (-8.9225, -8.3671, -12.7163, -8.1694, -0.0385, -0.2324, -0.0121),
    12: (-8.7167, -7.6808, -12.1323, -6.4967, 0.1003, 0.3857, 0.0381),
    13: (-8.4861, -6.3422, -12.8731, -9.0545, -0.0051, -0.0873, 0.0034),
    14: (-8.8416, -8.2991, -12.1866, -6.8248, 0.0825, 0.3249, 0.0398),
    15: (-8.5474, -6.4951, -12.8462, -8.8891, -0.0053, 0.0707, -0.0075),
    16: (-8.8622, -9.1319, -11.6367, -6.7841, 0.1023, 0.3345, 0.0218),
    17: (-8.5396, -7.8825, -11.4335, -3.9287, -0.2168, -0.5815, 0.1113),
    18: (-8.8719, -8.6952, -11.9684, -6.5917, 0.1032, 0.3574, -0.0280),
    19: (-8.2990, -6.0410, -12.2315, -5.7875, 0.1053, 0.3277, 0.0590),
    20: (-8.9878, -8.9661, -12.7607, -8.1713, -0.0348, -0.2139, -0.0149),
}


@dataclass(frozen=True)
class LarvaeRow:
    id: int
    features: tuple
    label: str


def larvae_rows() -> tuple:
    """The embedded 20-sample table, ids 1..20, labels scallop/non-scallop."""
    return tuple(
        LarvaeRow(
            id=i,
            features=_LARVAE[i],
            label="scallop" if i in SCALLOP_IDS else "non-scallop",
        )
        for i in sorted(_LARVAE)
    )


def triplicate(rows) -> tuple:
    """Three copies of every row: id i reappears as i+20 and i+40.

    Copies keep the original feature values and label, turning the 20-sample
    table into the 60-item cross-validation set (originals double as the
    labeled markers, copies as the unknowns).
    """
    rows = tuple(rows)
    out = list(rows)
    for shift in (20, 40):
        for r in rows:
            out.append(LarvaeRow(id=r.id + shift, features=r.features, label=r.label))
    return tuple(out)


def _hamming(a: int, b: int) -> int:
    return bin(a ^ b).count("1")


def _codewords(n_classes: int, n_features: int) -> list:
    """Greedy binary codewords, maximizing the guaranteed pairwise Hamming gap.

    Starts demanding all-bits separation and relaxes until n_classes words
    fit, so few classes get the widest geometry the feature count allows.
    """
    if n_classes > 2**n_features:
        raise ValueError(
            f"{n_classes} classes cannot be separated with {n_features} binary axes"
        )
    for thr in range(n_features, 0, -1):
        words = []
        for cand in range(2**n_features):
            if all(_hamming(cand, w) >= thr for w in words):
                words.append(cand)
                if len(words) == n_classes:
                    return words
    return list(range(n_classes))  # thr=1 always admits 2**F words


def make_synthetic(
    n_classes: int = 4,
    per_class: int = 200,
    n_features: int = 7,
    separation: float = 0.8,
    jitter: float = 0.05,
    seed: int = 0,
):
    """Labeled feature vectors with controlled intra/inter-class distances.

    Class centroids sit at binary codewords mapped to {0.5 - separation/2,
    0.5 + separation/2}; each item adds independent uniform jitter of the
    given half-width per component, clipped to [0, 1].  With the defaults
    (4 classes, F=7, separation 0.8, jitter 0.05) every centroid pair
    differs in 4 of 7 components, so inter-class distances stay above
    sqrt(4*(separation - 2*jitter)^2 / 7) ~ 0.53 while intra-class ones
    stay below 2*jitter = 0.1.

    Returns (values (n, F) float64, ids 1..n, labels like "c0").
    The draw order is one (item x feature) jitter per value, class-major,
    so a fixed seed reproduces the set exactly.
    """
    if n_classes < 2:
        raise ValueError("need at least 2 classes")
    if per_class < 1:
        raise ValueError("per_class must be >= 1")
    if n_features < 1:
        raise ValueError("n_features must be >= 1")
    if not 0.0 <= separation <= 1.0:
        raise ValueError("separation must lie in [0, 1]")
    if jitter < 0:
        raise ValueError("jitter must be >= 0")

    lo = 0.5 - separation / 2.0
    hi = 0.5 + separation / 2.0
    words = _codewords(n_classes, n_features)
    centroids = np.array(
        [[hi if (w >> (n_features - 1 - f)) & 1 else lo for f in range(n_features)]
         for w in words],
        dtype=np.float64,
    )

    rng = Xoshiro256pp(seed)
    n = n_classes * per_class
    values = np.empty((n, n_features), dtype=np.float64)
    labels = []
    row = 0
    for ci in range(n_classes):
        for _ in range(per_class):
            for f in range(n_features):
                off = (rng.uniform() * 2.0 - 1.0) * jitter
                v = centroids[ci, f] + off
                values[row, f] = min(1.0, max(0.0, v))
            labels.append(f"c{ci}")
            row += 1
    ids = np.arange(1, n + 1, dtype=np.int64)
    return values, ids, tuple(labels)
