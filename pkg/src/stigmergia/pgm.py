"""Netpbm readers and writers.

Reads binary (P5) and plain (P2) PGM, plus P6/P3 PPM colour images, which are
collapsed to grey on load.  Header parsing follows the Netpbm format rules:
tokens separated by whitespace, `#` comments allowed anywhere in the header,
and (for binary variants) a single whitespace byte between the maxval and the
raster.  Only maxval <= 255 (one byte per sample) is supported; sample values
are returned exactly as stored.

Writers emit P5 with maxval 255: `write_mask` maps {0,1} to {0,255}, and
`write_grey` writes intensities verbatim (used for grid snapshots).
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .segmentation import rgb_to_grey


class PnmFormatError(ValueError):
    """Malformed or unsupported Netpbm content."""


def _read_header_token(f: io.BufferedReader) -> bytes:
    tok = b""
    while True:
        ch = f.read(1)
        if ch == b"":
            raise PnmFormatError("unexpected end of file in header")
        if ch == b"#":
            while ch not in (b"\n", b"\r", b""):
                ch = f.read(1)
            continue
        if ch.isspace():
            if tok:
                return tok
            continue
        tok += ch


def _parse_int_token(f: io.BufferedReader, what: str) -> int:
    tok = _read_header_token(f)
    if not tok.isdigit():
        raise PnmFormatError(f"bad {what} token {tok!r}")
    return int(tok)


def read_image(path: str | Path) -> np.ndarray:
    """Read a PGM/PPM file into a 2-D uint8 grey array (PPM is averaged to grey)."""
    with open(path, "rb") as f:
        magic = f.read(2)
        if magic not in (b"P2", b"P5", b"P3", b"P6"):
            raise PnmFormatError(f"unsupported magic {magic!r} (want P2/P5 PGM or P3/P6 PPM)")
        width = _parse_int_token(f, "width")
        height = _parse_int_token(f, "height")
        maxval = _parse_int_token(f, "maxval")
        if width <= 0 or height <= 0:
            raise PnmFormatError(f"bad dimensions {width}x{height}")
        if not 0 < maxval <= 255:
            raise PnmFormatError(f"unsupported maxval {maxval} (only single-byte samples)")
        channels = 3 if magic in (b"P3", b"P6") else 1
        count = width * height * channels

        if magic in (b"P5", b"P6"):
            # the header token reader has already consumed the single
            # whitespace byte that separates maxval from the raster
            raster = f.read(count)
            if len(raster) != count:
                raise PnmFormatError(f"raster truncated: wanted {count} bytes, got {len(raster)}")
            data = np.frombuffer(raster, dtype=np.uint8)
        else:
            tokens = []
            while len(tokens) < count:
                tok = _read_header_token(f)
                if not tok.isdigit():
                    raise PnmFormatError(f"bad sample token {tok!r}")
                tokens.append(int(tok))
            data = np.array(tokens, dtype=np.int64)
            if (data > maxval).any():
                raise PnmFormatError("sample value exceeds maxval")
            data = data.astype(np.uint8)

    if channels == 3:
        return rgb_to_grey(data.reshape(height, width, 3))
    return data.reshape(height, width)


def write_grey(path: str | Path, img: np.ndarray) -> None:
    """Write a 2-D uint8 array as binary PGM (P5, maxval 255)."""
    a = np.ascontiguousarray(np.asarray(img, dtype=np.uint8))
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D grey image, got shape {a.shape}")
    with open(path, "wb") as f:
        f.write(f"P5\n{a.shape[1]} {a.shape[0]}\n255\n".encode("ascii"))
        f.write(a.tobytes())


def write_mask(path: str | Path, mask: np.ndarray) -> None:
    """Write a {0,1} mask as a {0,255} binary PGM."""
    m = np.asarray(mask)
    write_grey(path, (m != 0).astype(np.uint8) * 255)
