"""Greyscale-to-silhouette segmentation.

Turns an 8-bit microscope image into a single-object binary mask in three
steps: Otsu's histogram threshold, thresholding with a chosen (or automatic)
polarity, and extraction of the largest 8-connected component.

A grey image is a 2-D numpy array of intensities 0..255.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from .errors import DegenerateHistogramError, EmptyObjectError
from .moments import as_binary_image

_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


def as_grey_image(img) -> np.ndarray:
    """Validate and return `img` as a 2-D uint8 intensity array."""
    a = np.asarray(img)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"grey image must be 2-D and non-empty, got shape {a.shape}")
    u = a.astype(np.uint8)
    if not np.array_equal(u, a):
        raise ValueError("grey image intensities must be integers in 0..255")
    return u


def rgb_to_grey(img) -> np.ndarray:
    """Collapse an (H, W, 3) colour image to grey by the rounded channel average.

    Segmentation here keys on optical density, not hue, so a plain average is
    the right reduction.  Channel sums are never exact halves of 3, so every
    rounding convention agrees; integer arithmetic keeps it exact.
    """
    a = np.asarray(img)
    if a.ndim != 3 or a.shape[2] != 3:
        raise ValueError(f"colour image must have shape (H, W, 3), got {a.shape}")
    s = a.astype(np.int64).sum(axis=2)
    return ((2 * s + 3) // 6).astype(np.uint8)


def histogram_threshold(img) -> int:
    """Otsu's threshold: the level t maximizing between-class variance.

    Pixels <= t form one class, pixels > t the other.  Ties are broken toward
    the lowest qualifying t.  A constant-valued image has nothing to separate
    and raises DegenerateHistogramError.
    """
    a = as_grey_image(img)
    hist = np.bincount(a.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    levels = np.arange(256, dtype=np.float64)

    w0 = np.cumsum(hist)  # pixels <= t
    mass0 = np.cumsum(hist * levels)
    w1 = total - w0
    mean_all = mass0[-1]

    valid = (w0 > 0) & (w1 > 0)
    if not valid.any():
        raise DegenerateHistogramError("constant-valued image has no separating threshold")

    var_between = np.zeros(256)
    mu0 = np.divide(mass0, w0, out=np.zeros(256), where=valid)
    mu1 = np.divide(mean_all - mass0, w1, out=np.zeros(256), where=valid)
    var_between[valid] = w0[valid] * w1[valid] * (mu0[valid] - mu1[valid]) ** 2
    return int(np.argmax(var_between))  # argmax returns the first (lowest) maximizer


def binarize(img, t: int, object_is_dark: bool | None = True) -> np.ndarray:
    """Threshold at t: object = intensity <= t if dark, else intensity > t.

    With `object_is_dark=None` the polarity is chosen automatically: start
    dark, and flip if more than half of the pixels land as object (objects
    are assumed to be the minority of the frame).
    """
    a = as_grey_image(img)
    if object_is_dark is None:
        mask = a <= t
        if mask.sum() * 2 > mask.size:
            mask = ~mask
    elif object_is_dark:
        mask = a <= t
    else:
        mask = a > t
    return mask.astype(np.uint8)


def largest_component(img) -> np.ndarray:
    """Keep only the largest 8-connected component of object pixels.

    Size ties go to the component whose first pixel in row-major order comes
    earliest.
    """
    a = as_binary_image(img)
    if not a.any():
        raise EmptyObjectError("no object pixels to extract a component from")
    labels, count = ndimage.label(a, structure=_EIGHT_CONNECTED)
    if count == 1:
        return a
    sizes = np.bincount(labels.ravel())
    sizes[0] = 0
    best = sizes.max()
    candidates = np.flatnonzero(sizes == best)
    if candidates.size > 1:
        flat = labels.ravel()
        winner = min(candidates, key=lambda lab: int(np.argmax(flat == lab)))
    else:
        winner = candidates[0]
    return (labels == winner).astype(np.uint8)


def segment(grey, object_is_dark: bool | None = None) -> np.ndarray:
    """Full chain: Otsu threshold -> binarize -> largest component."""
    t = histogram_threshold(grey)
    return largest_component(binarize(grey, t, object_is_dark))
