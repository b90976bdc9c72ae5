"""Command-line interface.

Exit codes: 0 success, 1 I/O or malformed file, 2 invalid parameters,
3 the pipeline could not segment the input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import ParameterError, PgmError, PipelineError, PlacementError
from .growing import FillMode
from .image import read_label_map, read_pgm, write_label_map, write_label_ppm, write_pgm
from .metrics import evaluate
from .pipeline import PipelineConfig, segment, select_stage
from .preprocess import Polarity, median_filter, otsu
from .seeds import seeds_to_csv
from .synth import SynthSpec, synth_cells

EXIT_OK, EXIT_IO, EXIT_PARAM, EXIT_PIPELINE = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _Fail(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise _Fail(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from exc


def _load_image(path: str):
    try:
        return read_pgm(_read(path))
    except PgmError as exc:
        raise _Fail(EXIT_IO, f"{path}: {exc}") from exc


def _load_labels(path: str):
    try:
        return read_label_map(_read(path))
    except PgmError as exc:
        raise _Fail(EXIT_IO, f"{path}: {exc}") from exc


def _config(args) -> PipelineConfig:
    return PipelineConfig(
        k=args.k,
        r=args.r,
        connectivity=args.connectivity,
        median_window=args.median,
        polarity=args.polarity,
        min_area=args.min_area,
        rng_seed=args.rng_seed,
        fill_mode=args.fill_mode,
    )


def cmd_segment(args) -> int:
    img = _load_image(args.input)
    result = segment(img, _config(args))
    if args.out:
        _write(args.out, write_label_map(result.labels))
    if args.seeds_out:
        _write(args.seeds_out, seeds_to_csv(result.seeds).encode("ascii"))
    if args.ppm_out:
        _write(args.ppm_out, write_label_ppm(result.labels))
    print(f"threshold={result.threshold}")
    print(f"regions={result.labels.n_regions}")
    return EXIT_OK


def cmd_otsu(args) -> int:
    img = _load_image(args.input)
    res = otsu(median_filter(img, args.median))
    print(f"threshold={res.threshold}")
    print(f"between_class_variance={res.between_class_variance:.6f}")
    return EXIT_OK


def cmd_seeds(args) -> int:
    img = _load_image(args.input)
    stage = select_stage(img, _config(args))
    text = seeds_to_csv(stage.seeds)
    if args.out:
        _write(args.out, text.encode("ascii"))
        print(f"threshold={stage.otsu.threshold}")
        print(f"seeds={len(stage.seeds)}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_synth(args) -> int:
    spec = SynthSpec(
        width=args.width,
        height=args.height,
        n_cells=args.n_cells,
        radius_range=(args.radius_min, args.radius_max),
        fg_mean=args.fg,
        bg_mean=args.bg,
        noise_sigma=args.noise,
        rng_seed=args.rng_seed,
    )
    img, gt = synth_cells(spec)
    _write(args.out, write_pgm(img))
    if args.gt_out:
        _write(args.gt_out, write_label_map(gt))
    print(f"cells={gt.n_regions}")
    return EXIT_OK


def cmd_eval(args) -> int:
    pred = _load_labels(args.pred)
    gt = _load_labels(args.gt)
    sys.stdout.write(evaluate(pred, gt).to_text())
    return EXIT_OK


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="8-bit binary PGM (P5)")
    p.add_argument("--k", type=int, required=True, help="number of seeds / expected objects")
    p.add_argument("--r", type=int, default=3, help="odd side of the neighbourhood window (default 3)")
    p.add_argument("--connectivity", type=int, choices=(4, 8), default=8)
    p.add_argument("--median", type=int, default=3, help="odd median window; 1 disables (default 3)")
    p.add_argument("--polarity", choices=[p.value for p in Polarity], default="bright")
    p.add_argument("--min-area", type=int, default=5, help="smallest ROI kept, in pixels (default 5)")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--fill-mode", choices=[m.value for m in FillMode], default=FillMode.ERODED_CORE_THEN_FILL.value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="srgseg", description="Automatic seeded region growing segmentation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="run the full pipeline")
    _add_pipeline_flags(p)
    p.add_argument("--out", help="16-bit PGM label map")
    p.add_argument("--seeds-out", help="seeds CSV")
    p.add_argument("--ppm-out", help="colour visualization (PPM)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("otsu", help="print the Otsu threshold")
    p.add_argument("input")
    p.add_argument("--median", type=int, default=3, help="odd median window applied first (default 3)")
    p.set_defaults(func=cmd_otsu)

    p = sub.add_parser("seeds", help="select seeds and write them as CSV")
    _add_pipeline_flags(p)
    p.add_argument("--out", help="CSV path (default: standard output)")
    p.set_defaults(func=cmd_seeds)

    p = sub.add_parser("synth", help="generate a synthetic cell image")
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--height", type=int, default=256)
    p.add_argument("--n-cells", type=int, default=4)
    p.add_argument("--radius-min", type=int, default=15)
    p.add_argument("--radius-max", type=int, default=25)
    p.add_argument("--fg", type=float, default=200.0)
    p.add_argument("--bg", type=float, default=50.0)
    p.add_argument("--noise", type=float, default=20.0)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", required=True, help="image PGM")
    p.add_argument("--gt-out", help="ground-truth 16-bit label PGM")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("eval", help="compare a label map against ground truth")
    p.add_argument("pred")
    p.add_argument("gt")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ParameterError, PlacementError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
