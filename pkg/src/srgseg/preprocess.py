"""Median denoising, Otsu threshold selection and binarization."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ._backend import kernels
from .errors import DegenerateHistogramError, ParameterError
from .image import BinaryMask, GrayImage


class Polarity(str, Enum):
    BRIGHT = "bright"
    DARK = "dark"


def _check_odd(value: int, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1 or value % 2 == 0:
        raise ParameterError(f"{name} must be an odd integer >= 1, got {value!r}")


def median_filter(img: GrayImage, window: int = 3) -> GrayImage:
    """Median of each ``window`` x ``window`` neighbourhood, edges replicated."""
    _check_odd(window, "median window")
    if window == 1:
        return img
    return GrayImage(kernels.median_filter(img.data, int(window)))


@dataclass(frozen=True)
class OtsuResult:
    threshold: int
    between_class_variance: float
    histogram: Tuple[int, ...]


def histogram(img: GrayImage) -> np.ndarray:
    return np.bincount(img.data.ravel(), minlength=256).astype(np.int64)


def otsu_from_histogram(hist) -> OtsuResult:
    """Otsu threshold of a 256-bin histogram.

    The class split is ``{<= t}`` / ``{> t}`` and the criterion is the
    between-class variance ``w0 * w1 * (mu0 - mu1)**2``.  Candidates are
    compared exactly in integer arithmetic, so equal variances really tie
    and the smallest ``t`` wins.
    """
    counts = [int(c) for c in hist]
    if len(counts) != 256:
        raise ParameterError(f"histogram must have 256 bins, got {len(counts)}")
    if sum(1 for c in counts if c) < 2:
        raise DegenerateHistogramError("degenerate histogram: image has a single intensity")

    total = sum(counts)
    total_sum = sum(i * c for i, c in enumerate(counts))
    # w0 w1 (mu0 - mu1)^2 == (N*S0 - S*n0)^2 / (N^2 * n0 * n1)
    best_t, best_num, best_den = 0, 0, 1
    n0 = s0 = 0
    for t in range(255):
        n0 += counts[t]
        s0 += t * counts[t]
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue
        num = (total * s0 - total_sum * n0) ** 2
        den = n0 * n1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    variance = best_num / (best_den * total * total)
    return OtsuResult(best_t, float(variance), tuple(counts))


def otsu(img: GrayImage) -> OtsuResult:
    return otsu_from_histogram(histogram(img))


def binarize(img: GrayImage, t: int, polarity: Polarity | str = Polarity.BRIGHT) -> BinaryMask:
    """Foreground is ``> t`` for bright objects and ``<= t`` for dark ones."""
    polarity = Polarity(polarity)
    if not 0 <= t <= 254:
        raise ParameterError(f"threshold must lie in [0, 254], got {t}")
    if polarity is Polarity.BRIGHT:
        return BinaryMask(img.data > t)
    return BinaryMask(img.data <= t)
