"""Shape features from binary silhouettes: image moments and the seven
rotation invariants.

A binary image is a 2-D numpy array over {0, 1}, indexed ``[row, col]`` with
zero-based coordinates and row increasing downward.  A feature vector is a
1-D float array.  The moment chain is

    raw m_pq  ->  centroid  ->  central moments  ->  area-normalized moments
              ->  seven rotation/scale/translation invariants (h1..h7)

followed by two optional normalizations used when feeding feature vectors to
the clustering stage: a signed-log squash (`log_normalize`) and per-column
min-max scaling to [0, 1] over a whole sample set (`minmax_normalize`).

Numerical notes.  Raw moments are accumulated in exact integer arithmetic
whenever the term bound fits in int64 (true for any image up to several
thousand pixels on a side); beyond that a compensated float summation takes
over.  Central moments are computed on the object's bounding box, which makes
every downstream value bit-identical under whole-pixel translation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatchError, EmptyObjectError, InsufficientDataError

#: Guard added inside the signed-log transform so t(0) is finite.
LOG_EPSILON = 1e-30

#: Bit budget for exact int64 moment accumulation.
_INT64_LIMIT = 2**62

_ORDERS = [(p, q) for p in range(4) for q in range(4) if p + q <= 3]


def as_binary_image(img) -> np.ndarray:
    """Validate and return `img` as a 2-D uint8 array over {0, 1}."""
    a = np.asarray(img)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"binary image must be 2-D and non-empty, got shape {a.shape}")
    if a.dtype == bool:
        return a.astype(np.uint8)
    u = a.astype(np.uint8)
    if not np.array_equal(u, a) or not np.isin(u, (0, 1)).all():
        raise ValueError("binary image pixels must all be exactly 0 or 1")
    return u


@dataclass(frozen=True)
class MomentSet:
    """Raw, central and (optionally) area-normalized moments of one image.

    `raw` uses full-frame zero-based coordinates; `central` is referred to the
    centroid, so central[(1, 0)] == central[(0, 1)] == 0 by construction.
    `normalized` holds n_pq = central_pq / m00**(1 + (p+q)/2) for p+q in
    {2, 3}; it is empty until `normalized_central_moments` fills it.
    """

    raw: dict[tuple[int, int], float]
    centroid_r: float
    centroid_c: float
    central: dict[tuple[int, int], float]
    normalized: dict[tuple[int, int], float]


@dataclass(frozen=True)
class HuVector:
    """The seven rotation invariants, h[0] == h1 through h[6] == h7."""

    h: tuple[float, float, float, float, float, float, float]

    def __iter__(self):
        return iter(self.h)

    def __getitem__(self, i: int) -> float:
        return self.h[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.h, dtype=np.float64)


def _moment_exact(rs: np.ndarray, cs: np.ndarray, p: int, q: int) -> int | float:
    """Sum r**p * c**q over object pixel coordinates.

    Integer-exact when the worst-case term bound fits int64, else compensated
    float summation (math.fsum).
    """
    n = rs.size
    if n == 0:
        return 0
    bound = n * (int(rs.max()) ** p) * (int(cs.max()) ** q)
    if bound < _INT64_LIMIT:
        term = np.ones(n, dtype=np.int64)
        if p:
            term *= rs.astype(np.int64) ** p
        if q:
            term *= cs.astype(np.int64) ** q
        return int(term.sum())
    rf = rs.astype(np.float64)
    cf = cs.astype(np.float64)
    return math.fsum(rf**p * cf**q)


def raw_moment(img, p: int, q: int) -> float:
    """Two-dimensional raw moment m_pq over zero-based pixel coordinates.

    m00 is the object pixel count; an all-background image gives 0.
    Orders above p+q == 3 are rejected (nothing downstream needs them).
    """
    if p < 0 or q < 0 or p + q > 3:
        raise ValueError(f"moment order (p={p}, q={q}) out of supported range p+q <= 3")
    a = as_binary_image(img)
    rs, cs = np.nonzero(a)
    return float(_moment_exact(rs, cs, p, q))


def centroid(img) -> tuple[float, float]:
    """Centre of mass (m10/m00, m01/m00) of the object pixels."""
    a = as_binary_image(img)
    rs, cs = np.nonzero(a)
    if rs.size == 0:
        raise EmptyObjectError("centroid of an all-background image")
    m00 = rs.size
    return float(_moment_exact(rs, cs, 1, 0)) / m00, float(_moment_exact(rs, cs, 0, 1)) / m00


def central_moments(img) -> MomentSet:
    """Raw and central moments up to order 3 (normalized left empty).

    Central moments are evaluated in bounding-box coordinates, so any two
    whole-pixel translations of the same object produce bit-identical values.
    """
    a = as_binary_image(img)
    rs, cs = np.nonzero(a)
    if rs.size == 0:
        raise EmptyObjectError("central moments of an all-background image")
    m00 = rs.size

    raw = {(p, q): float(_moment_exact(rs, cs, p, q)) for p, q in _ORDERS}
    cen_r = raw[(1, 0)] / m00
    cen_c = raw[(0, 1)] / m00

    # Bounding-box frame: translation drops out exactly.
    r0 = int(rs.min())
    c0 = int(cs.min())
    rl = rs - r0
    cl = cs - c0
    m = {(p, q): float(_moment_exact(rl, cl, p, q)) for p, q in _ORDERS}
    rb = m[(1, 0)] / m00
    cb = m[(0, 1)] / m00

    central = {
        (0, 0): float(m00),
        (1, 0): 0.0,
        (0, 1): 0.0,
        (2, 0): m[(2, 0)] - rb * m[(1, 0)],
        (1, 1): m[(1, 1)] - rb * m[(0, 1)],
        (0, 2): m[(0, 2)] - cb * m[(0, 1)],
        (3, 0): m[(3, 0)] - 3.0 * rb * m[(2, 0)] + 2.0 * rb * rb * m[(1, 0)],
        (2, 1): m[(2, 1)] - 2.0 * rb * m[(1, 1)] - cb * m[(2, 0)] + 2.0 * rb * rb * m[(0, 1)],
        (1, 2): m[(1, 2)] - 2.0 * cb * m[(1, 1)] - rb * m[(0, 2)] + 2.0 * cb * cb * m[(1, 0)],
        (0, 3): m[(0, 3)] - 3.0 * cb * m[(0, 2)] + 2.0 * cb * cb * m[(0, 1)],
    }
    return MomentSet(raw=raw, centroid_r=cen_r, centroid_c=cen_c, central=central, normalized={})


def normalized_central_moments(m: MomentSet) -> MomentSet:
    """Fill in n_pq = central_pq / m00**g with g = 1 + (p+q)/2, p+q in {2, 3}."""
    m00 = m.central[(0, 0)]
    if m00 <= 0:
        raise EmptyObjectError("normalization requires a non-empty object")
    normalized = {}
    for (p, q), value in m.central.items():
        order = p + q
        if order < 2:
            continue
        g = 1.0 + order / 2.0
        normalized[(p, q)] = value / m00**g
    return replace(m, normalized=normalized)


def hu_moments(m: MomentSet) -> HuVector:
    """The seven rotation invariants from normalized central moments."""
    n = m.normalized
    if not n:
        m = normalized_central_moments(m)
        n = m.normalized
    n20, n02, n11 = n[(2, 0)], n[(0, 2)], n[(1, 1)]
    n30, n03, n21, n12 = n[(3, 0)], n[(0, 3)], n[(2, 1)], n[(1, 2)]

    a = n30 + n12  # first-axis skew group
    b = n21 + n03  # second-axis skew group
    c = n30 - 3.0 * n12
    d = 3.0 * n21 - n03

    h1 = n20 + n02
    h2 = (n20 - n02) ** 2 + 4.0 * n11**2
    h3 = c**2 + d**2
    h4 = a**2 + b**2
    h5 = c * a * (a**2 - 3.0 * b**2) + d * b * (3.0 * a**2 - b**2)
    h6 = (n20 - n02) * (a**2 - b**2) + 4.0 * n11 * a * b
    h7 = d * a * (a**2 - 3.0 * b**2) - c * b * (3.0 * a**2 - b**2)
    return HuVector(h=(h1, h2, h3, h4, h5, h6, h7))


def hu_features(img) -> HuVector:
    """Convenience chain: binary image -> HuVector."""
    return hu_moments(normalized_central_moments(central_moments(img)))


def signed_log(x: float, eps: float = LOG_EPSILON) -> float:
    """sign(x) * ln(|x| + eps); maps 0 to 0 under the sign-of-zero convention.

    Note the sign convention: a small negative input like -e**-8 maps to a
    positive output (+8-ish), since ln of its small magnitude is negative.
    """
    s = 0.0 if x == 0 else math.copysign(1.0, x)
    return s * math.log(abs(x) + eps)


def log_normalize(h: HuVector, transform: Callable[[float], float] | None = None) -> HuVector:
    """Apply a magnitude-squashing transform (default `signed_log`) per component."""
    t = transform if transform is not None else signed_log
    return HuVector(h=tuple(t(x) for x in h.h))  # type: ignore[arg-type]


def minmax_normalize(features: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    """Scale each feature column to [0, 1] over the whole sample set.

    Columns with max == min collapse to all zeros.  At least two vectors are
    required; all vectors must share one length.
    """
    mat = np.asarray(features, dtype=np.float64)
    if mat.ndim != 2:
        raise DimensionMismatchError("feature vectors must all have the same length")
    if mat.shape[0] < 2:
        raise InsufficientDataError("min-max normalization needs at least 2 vectors")
    lo = mat.min(axis=0)
    span = mat.max(axis=0) - lo
    out = np.zeros_like(mat)
    live = span > 0
    out[:, live] = (mat[:, live] - lo[live]) / span[live]
    return out
