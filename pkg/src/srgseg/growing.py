"""Neighbourhood-conditioned seeded region growing.

Growth is single-linkage against the Otsu class: a pixel is accepted when it
is on the foreground side of the threshold, never by comparison with a
running region mean.  To keep regions from leaking through thin foreground
necks, the first phase only walks the eroded *core* (pixels whose whole
``R`` x ``R`` window is foreground), the same rule used to filter seed
candidates.  A second phase then hands each remaining foreground pixel to
the region that is nearest by breadth-first distance.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from ._backend import kernels
from ._purepy import OFFSETS_8
from .errors import ParameterError, RejectedSeedError
from .image import GrayImage, LabelMap, Seed
from .preprocess import Polarity, _check_odd, binarize
from .seeds import erode


class FillMode(str, Enum):
    ERODED_CORE_THEN_FILL = "eroded_core_then_fill"
    OTSU_ONLY = "otsu_only"


@dataclass(frozen=True)
class GrowConfig:
    threshold: int
    r: int = 3
    connectivity: int = 8
    polarity: Polarity = Polarity.BRIGHT
    fill_mode: FillMode = FillMode.ERODED_CORE_THEN_FILL

    def __post_init__(self):
        _check_odd(self.r, "R")
        if self.connectivity not in (4, 8):
            raise ParameterError(f"connectivity must be 4 or 8, got {self.connectivity}")
        if not 0 <= self.threshold <= 254:
            raise ParameterError(f"threshold must lie in [0, 254], got {self.threshold}")
        object.__setattr__(self, "polarity", Polarity(self.polarity))
        object.__setattr__(self, "fill_mode", FillMode(self.fill_mode))


def neighbors(p: Tuple[int, int], connectivity: int, bounds: Tuple[int, int]) -> List[Tuple[int, int]]:
    """In-bounds neighbours of ``p = (x, y)`` in the order N, S, W, E, NW, NE, SW, SE.

    ``bounds`` is ``(width, height)``.
    """
    if connectivity not in (4, 8):
        raise ParameterError(f"connectivity must be 4 or 8, got {connectivity}")
    x, y = p
    w, h = bounds
    return [(x + dx, y + dy) for dx, dy in OFFSETS_8[:connectivity] if 0 <= x + dx < w and 0 <= y + dy < h]


def grow_regions(img: GrayImage, seeds: Sequence[Seed], cfg: GrowConfig) -> LabelMap:
    """Grow one region per seed; label ``seed.id`` marks the region of each seed.

    Raises :class:`RejectedSeedError` if a seed is outside the image, not in
    the core domain, or shares a pixel or id with another seed.
    """
    fg = binarize(img, cfg.threshold, cfg.polarity)
    core = erode(fg, cfg.r)
    ordered = sorted(seeds, key=lambda s: s.id)
    seen_ids, seen_px = set(), set()
    for s in ordered:
        if s.id in seen_ids:
            raise RejectedSeedError(s.id, "duplicate seed id")
        if not (0 <= s.x < img.width and 0 <= s.y < img.height):
            raise RejectedSeedError(s.id, f"({s.x}, {s.y}) is outside the image")
        if not core.data[s.y, s.x]:
            raise RejectedSeedError(s.id, f"its {cfg.r}x{cfg.r} window at ({s.x}, {s.y}) is not all foreground")
        if (s.x, s.y) in seen_px:
            raise RejectedSeedError(s.id, f"pixel ({s.x}, {s.y}) already holds another seed")
        seen_ids.add(s.id)
        seen_px.add((s.x, s.y))

    fill = cfg.fill_mode is FillMode.ERODED_CORE_THEN_FILL
    # without the fill phase, growth runs directly over the thresholded mask
    domain = core.data if fill else fg.data
    labels = kernels.grow(
        fg.data.view(np.uint8),
        domain.view(np.uint8),
        np.array([s.y for s in ordered], dtype=np.intp),
        np.array([s.x for s in ordered], dtype=np.intp),
        [s.id for s in ordered],
        cfg.connectivity,
        fill,
    )
    return LabelMap(labels)


def baseline_otsu_labels(img: GrayImage, threshold: int, polarity: Polarity | str = Polarity.BRIGHT) -> LabelMap:
    """Plain thresholding followed by 8-connected component labeling."""
    fg = binarize(img, threshold, polarity)
    labels, _ = kernels.label_components(fg.data.view(np.uint8), 8)
    return LabelMap(labels)
