"""Synthetic noisy cell images with ground truth."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ParameterError, PlacementError
from .image import GrayImage, LabelMap

MAX_ATTEMPTS = 10_000
MIN_GAP = 2


@dataclass(frozen=True)
class SynthSpec:
    width: int = 256
    height: int = 256
    n_cells: int = 4
    radius_range: Tuple[int, int] = (15, 25)
    fg_mean: float = 200.0
    bg_mean: float = 50.0
    noise_sigma: float = 20.0
    rng_seed: int = 0

    def __post_init__(self):
        lo, hi = self.radius_range
        if self.width < 1 or self.height < 1:
            raise ParameterError("width and height must be positive")
        if self.n_cells < 0:
            raise ParameterError("n_cells must be non-negative")
        if not 1 <= lo <= hi:
            raise ParameterError(f"invalid radius range {self.radius_range}")
        if self.fg_mean == self.bg_mean:
            raise ParameterError("fg_mean and bg_mean must differ")
        if self.noise_sigma < 0:
            raise ParameterError("noise_sigma must be >= 0")


def synth_cells(spec: SynthSpec) -> Tuple[GrayImage, LabelMap]:
    """Filled discs on a flat background plus clamped Gaussian noise.

    Discs lie fully inside the image and are separated by at least
    ``MIN_GAP`` background pixels.  Output is a pure function of ``spec``.
    """
    rng = np.random.default_rng(spec.rng_seed)
    lo, hi = spec.radius_range
    placed = []
    attempts = 0
    while len(placed) < spec.n_cells:
        if attempts >= MAX_ATTEMPTS:
            raise PlacementError(
                f"placed only {len(placed)} of {spec.n_cells} cells in {MAX_ATTEMPTS} attempts; "
                "use a smaller radius range or fewer cells"
            )
        attempts += 1
        r = int(rng.integers(lo, hi + 1))
        if 2 * r + 1 > min(spec.width, spec.height):
            continue
        cx = int(rng.integers(r, spec.width - r))
        cy = int(rng.integers(r, spec.height - r))
        if all((cx - x) ** 2 + (cy - y) ** 2 >= (r + pr + MIN_GAP + 1) ** 2 for x, y, pr in placed):
            placed.append((cx, cy, r))

    yy, xx = np.mgrid[0 : spec.height, 0 : spec.width]
    gt = np.zeros((spec.height, spec.width), dtype=np.int64)
    for label, (cx, cy, r) in enumerate(placed, start=1):
        gt[(xx - cx) ** 2 + (yy - cy) ** 2 <= r * r] = label

    clean = np.where(gt > 0, spec.fg_mean, spec.bg_mean).astype(np.float64)
    if spec.noise_sigma > 0:
        clean = clean + rng.normal(0.0, spec.noise_sigma, size=clean.shape)
    img = np.clip(np.rint(clean), 0, 255).astype(np.uint8)
    return GrayImage(img), LabelMap(gt)
