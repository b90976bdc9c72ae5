"""Raster types and Netpbm (PGM/PPM) encoding.

Coordinates follow the usual image convention: ``x`` is the column, ``y`` the
row, origin at the top-left corner.  Arrays are stored row-major with shape
``(height, width)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .errors import LabelOverflowError, PgmError, PgmHeaderError, PgmMaxvalError, PgmTruncatedError

__all__ = [
    "GrayImage",
    "BinaryMask",
    "LabelMap",
    "Seed",
    "read_pgm",
    "write_pgm",
    "read_label_map",
    "write_label_map",
    "write_label_ppm",
    "PALETTE",
]


def _frozen(arr: np.ndarray, dtype) -> np.ndarray:
    out = np.array(arr, dtype=dtype, copy=True, order="C")
    out.setflags(write=False)
    return out


class _Raster:
    """Common behaviour for the immutable 2D rasters below."""

    data: np.ndarray

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((type(self).__name__, self.data.shape, self.data.tobytes()))

    def __getitem__(self, xy: Tuple[int, int]):
        x, y = xy
        return self.data[y, x].item()

    def __repr__(self):
        return f"{type(self).__name__}(width={self.width}, height={self.height})"


def _check_2d(arr: np.ndarray, what: str) -> None:
    if arr.ndim != 2:
        raise ValueError(f"{what} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{what} must be at least 1x1, got shape {arr.shape}")


class GrayImage(_Raster):
    """8-bit single-channel image."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data)
        _check_2d(arr, "GrayImage")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("GrayImage intensities must lie in [0, 255]")
            if np.issubdtype(arr.dtype, np.floating) and not np.all(arr == np.round(arr)):
                raise ValueError("GrayImage intensities must be integers")
        object.__setattr__(self, "data", _frozen(arr, np.uint8))

    def __setattr__(self, name, value):
        raise AttributeError("GrayImage is immutable")

    @classmethod
    def from_pixels(cls, width: int, height: int, pixels: Sequence[int]) -> "GrayImage":
        if len(pixels) != width * height:
            raise ValueError(f"expected {width * height} pixels, got {len(pixels)}")
        return cls(np.asarray(pixels, dtype=np.int64).reshape(height, width))

    @property
    def pixels(self) -> List[int]:
        return self.data.ravel().tolist()


class BinaryMask(_Raster):
    """Foreground flags; ``True`` marks foreground."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data)
        _check_2d(arr, "BinaryMask")
        object.__setattr__(self, "data", _frozen(arr != 0, np.bool_))

    def __setattr__(self, name, value):
        raise AttributeError("BinaryMask is immutable")

    @property
    def bits(self) -> List[bool]:
        return self.data.ravel().tolist()

    def count(self) -> int:
        return int(self.data.sum())

    def __invert__(self) -> "BinaryMask":
        return BinaryMask(~self.data)


class LabelMap(_Raster):
    """Integer region labels; 0 is background.

    Labels are expected to be ``{0} | {1..n}`` without gaps.  Use
    :meth:`relabeled` to compact an arbitrary labeling.
    """

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data)
        _check_2d(arr, "LabelMap")
        if arr.size and arr.min() < 0:
            raise ValueError("labels must be non-negative")
        object.__setattr__(self, "data", _frozen(arr, np.int64))

    def __setattr__(self, name, value):
        raise AttributeError("LabelMap is immutable")

    @property
    def labels(self) -> List[int]:
        return self.data.ravel().tolist()

    def label_values(self) -> List[int]:
        """Sorted distinct non-zero labels."""
        vals = np.unique(self.data)
        return [int(v) for v in vals if v != 0]

    @property
    def n_regions(self) -> int:
        return len(self.label_values())

    def is_compact(self) -> bool:
        vals = self.label_values()
        return vals == list(range(1, len(vals) + 1))

    def region(self, label: int) -> np.ndarray:
        """Boolean mask of one label."""
        return self.data == label

    def relabeled(self) -> "LabelMap":
        """Renumber non-zero labels to 1..n in raster order of first appearance."""
        flat = self.data.ravel()
        vals, first = np.unique(flat, return_index=True)
        lut = np.zeros(int(vals[-1]) + 1, dtype=np.int64)
        nonzero = [(f, v) for f, v in zip(first, vals) if v != 0]
        for new_label, (_, v) in enumerate(sorted(nonzero), start=1):
            lut[v] = new_label
        out = lut[self.data]
        return LabelMap(out)


@dataclass(frozen=True)
class Seed:
    """A seed pixel that founds region ``id``."""

    id: int
    x: int
    y: int
    intensity: int

    def __post_init__(self):
        if self.id < 1:
            raise ValueError(f"seed id must be positive, got {self.id}")
        if not 0 <= self.intensity <= 255:
            raise ValueError(f"seed intensity out of range: {self.intensity}")


# --------------------------------------------------------------------------
# PGM decoding

_WHITESPACE = frozenset(b" \t\n\r\v\f")
_HASH = ord("#")


class _HeaderReader:
    def __init__(self, buf: bytes):
        self.buf = buf
        self.pos = 0

    def skip_space_and_comments(self) -> None:
        buf, n = self.buf, len(self.buf)
        while self.pos < n:
            c = buf[self.pos]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == _HASH:
                nl = buf.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            else:
                break

    def token(self, what: str) -> int:
        self.skip_space_and_comments()
        buf, n = self.buf, len(self.buf)
        start = self.pos
        while self.pos < n and buf[self.pos] not in _WHITESPACE and buf[self.pos] != _HASH:
            self.pos += 1
        raw = buf[start : self.pos]
        if not raw:
            raise PgmHeaderError(f"missing {what}", start)
        if not raw.isdigit():
            raise PgmHeaderError(f"{what} is not a decimal integer: {raw!r}", start)
        return int(raw)


def _parse_header(buf: bytes, max_maxval: int) -> Tuple[int, int, int, int]:
    if buf[:2] != b"P5":
        raise PgmHeaderError("not a binary PGM (magic 'P5' expected)", 0)
    if len(buf) < 3 or (buf[2] not in _WHITESPACE and buf[2] != _HASH):
        raise PgmHeaderError("magic must be followed by whitespace", 2)
    rd = _HeaderReader(buf)
    rd.pos = 2
    width = rd.token("width")
    height = rd.token("height")
    maxval_at = rd.pos
    maxval = rd.token("maxval")
    if width < 1 or height < 1:
        raise PgmHeaderError(f"dimensions must be positive, got {width}x{height}", maxval_at)
    if not 1 <= maxval <= max_maxval:
        raise PgmMaxvalError(f"maxval {maxval} outside [1, {max_maxval}]", maxval_at)
    if rd.pos >= len(buf) or buf[rd.pos] not in _WHITESPACE:
        raise PgmHeaderError("maxval must be followed by a single whitespace byte", rd.pos)
    return width, height, maxval, rd.pos + 1


def _payload(buf: bytes, offset: int, count: int, sample_bytes: int) -> memoryview:
    need = count * sample_bytes
    have = len(buf) - offset
    if have < need:
        raise PgmTruncatedError(f"payload truncated: need {need} bytes, have {max(have, 0)}", len(buf))
    return memoryview(buf)[offset : offset + need]


def _check_samples(arr: np.ndarray, maxval: int, offset: int, sample_bytes: int) -> None:
    over = np.flatnonzero(arr > maxval)
    if over.size:
        i = int(over[0])
        raise PgmError(f"sample {int(arr[i])} exceeds maxval {maxval}", offset + i * sample_bytes)


def read_pgm(data: bytes) -> GrayImage:
    """Decode an 8-bit binary PGM (``P5``, maxval <= 255)."""
    buf = bytes(data)
    width, height, maxval, offset = _parse_header(buf, 255)
    raw = _payload(buf, offset, width * height, 1)
    arr = np.frombuffer(raw, dtype=np.uint8)
    _check_samples(arr, maxval, offset, 1)
    return GrayImage(arr.reshape(height, width))


def write_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.data.tobytes()


def read_label_map(data: bytes) -> LabelMap:
    """Decode a label map stored as 8- or 16-bit ``P5``.

    16-bit samples are big-endian, as Netpbm requires.
    """
    buf = bytes(data)
    width, height, maxval, offset = _parse_header(buf, 65535)
    if maxval < 256:
        arr = np.frombuffer(_payload(buf, offset, width * height, 1), dtype=np.uint8)
        _check_samples(arr, maxval, offset, 1)
    else:
        arr = np.frombuffer(_payload(buf, offset, width * height, 2), dtype=">u2")
        _check_samples(arr, maxval, offset, 2)
    return LabelMap(arr.astype(np.int64).reshape(height, width))


def write_label_map(lm: LabelMap) -> bytes:
    """Encode labels as a 16-bit ``P5`` with maxval 65535."""
    if lm.data.size and int(lm.data.max()) > 65535:
        raise LabelOverflowError(f"label {int(lm.data.max())} does not fit in 16 bits")
    header = f"P5\n{lm.width} {lm.height}\n65535\n".encode("ascii")
    return header + lm.data.astype(">u2").tobytes()


# Label 0 is black; other labels cycle through this table.
PALETTE: Tuple[Tuple[int, int, int], ...] = (
    (230, 25, 75),
    (60, 180, 75),
    (255, 225, 25),
    (0, 130, 200),
    (245, 130, 48),
    (145, 30, 180),
    (70, 240, 240),
    (240, 50, 230),
    (210, 245, 60),
    (250, 190, 212),
    (0, 128, 128),
    (220, 190, 255),
    (170, 110, 40),
    (255, 250, 200),
    (128, 0, 0),
    (170, 255, 195),
    (128, 128, 0),
    (255, 215, 180),
    (0, 0, 128),
    (128, 128, 128),
)


def label_colors(labels: Iterable[int]) -> np.ndarray:
    lut = np.asarray(PALETTE, dtype=np.uint8)
    idx = np.asarray(list(labels), dtype=np.int64)
    out = lut[(idx - 1) % len(PALETTE)]
    out[idx == 0] = 0
    return out


def write_label_ppm(lm: LabelMap) -> bytes:
    """Colour visualization of a label map as binary PPM (``P6``)."""
    lut = np.zeros((int(lm.data.max()) + 1, 3), dtype=np.uint8)
    if lut.shape[0] > 1:
        lut[1:] = label_colors(range(1, lut.shape[0]))
    rgb = lut[lm.data]
    header = f"P6\n{lm.width} {lm.height}\n255\n".encode("ascii")
    return header + rgb.tobytes()
