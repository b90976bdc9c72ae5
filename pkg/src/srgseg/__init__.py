"""Automatic seeded region growing segmentation for 2D grayscale images."""
from ._backend import NAME as BACKEND
from .errors import (
    DegenerateHistogramError,
    ParameterError,
    PgmError,
    PipelineError,
    RejectedSeedError,
)
from .growing import FillMode, GrowConfig, baseline_otsu_labels, grow_regions, neighbors
from .image import BinaryMask, GrayImage, LabelMap, Seed, read_label_map, read_pgm, write_label_map, write_pgm
from .metrics import EvalReport, dice, evaluate
from .pipeline import PipelineConfig, PipelineResult, segment
from .preprocess import OtsuResult, Polarity, binarize, median_filter, otsu
from .seeds import extract_features, extract_rois, filter_candidates, kmeans, select_seeds
from .synth import SynthSpec, synth_cells

__version__ = "0.1.0"
