"""End-to-end segmentation: median -> Otsu -> ROIs -> seeds -> growth."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import NoCandidatesError, NoRoisError, ParameterError, PipelineError
from .growing import FillMode, GrowConfig, grow_regions
from .image import BinaryMask, GrayImage, LabelMap, Seed
from .preprocess import OtsuResult, Polarity, _check_odd, binarize, median_filter, otsu
from .seeds import CandidateSet, FeatureSet, KmeansModel, Roi, extract_features, extract_rois, filter_candidates, kmeans, select_seeds


@dataclass(frozen=True)
class PipelineConfig:
    k: int
    r: int = 3
    connectivity: int = 8
    median_window: int = 3
    polarity: Polarity = Polarity.BRIGHT
    min_area: int = 5
    rng_seed: int = 0
    fill_mode: FillMode = FillMode.ERODED_CORE_THEN_FILL

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k!r}")
        _check_odd(self.r, "R")
        _check_odd(self.median_window, "median window")
        if self.connectivity not in (4, 8):
            raise ParameterError(f"connectivity must be 4 or 8, got {self.connectivity}")
        if self.min_area < 1:
            raise ParameterError(f"min_area must be >= 1, got {self.min_area}")
        object.__setattr__(self, "polarity", Polarity(self.polarity))
        object.__setattr__(self, "fill_mode", FillMode(self.fill_mode))


@dataclass(frozen=True, eq=False)
class SeedStage:
    filtered: GrayImage
    otsu: OtsuResult
    mask: BinaryMask
    rois: List[Roi]
    candidates: CandidateSet
    features: FeatureSet
    model: KmeansModel
    seeds: Tuple[Seed, ...]


@dataclass(frozen=True, eq=False)
class PipelineResult:
    stage: SeedStage
    labels: LabelMap

    @property
    def threshold(self) -> int:
        return self.stage.otsu.threshold

    @property
    def seeds(self) -> Tuple[Seed, ...]:
        return self.stage.seeds


def select_stage(img: GrayImage, cfg: PipelineConfig) -> SeedStage:
    filtered = median_filter(img, cfg.median_window)
    ot = otsu(filtered)
    mask = binarize(filtered, ot.threshold, cfg.polarity)
    rois = extract_rois(mask, cfg.min_area)
    if not rois:
        raise NoRoisError(f"no regions of interest with area >= {cfg.min_area}")
    candidates = filter_candidates(mask, rois, cfg.r, filtered)
    if len(candidates) == 0:
        raise NoCandidatesError(f"no seed candidates: no pixel has a fully foreground {cfg.r}x{cfg.r} window")
    features = extract_features(candidates)
    if cfg.k > len(features):
        raise PipelineError(f"k={cfg.k} exceeds the {len(features)} available seed candidates")
    model = kmeans(features, cfg.k, rng_seed=cfg.rng_seed)
    seeds = select_seeds(model, candidates, features)
    return SeedStage(filtered, ot, mask, rois, candidates, features, model, seeds)


def segment(img: GrayImage, cfg: PipelineConfig) -> PipelineResult:
    stage = select_stage(img, cfg)
    grow_cfg = GrowConfig(
        threshold=stage.otsu.threshold,
        r=cfg.r,
        connectivity=cfg.connectivity,
        polarity=cfg.polarity,
        fill_mode=cfg.fill_mode,
    )
    labels = grow_regions(stage.filtered, stage.seeds, grow_cfg)
    return PipelineResult(stage, labels)
