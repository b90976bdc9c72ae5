"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--size 256] [--repeat 5]
"""
import argparse
import time

import numpy as np

from srgseg import _backend, _purepy
from srgseg.synth import SynthSpec, synth_cells


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=256)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    n_cells = max(4, (args.size // 64) ** 2)
    img, _ = synth_cells(SynthSpec(width=args.size, height=args.size, n_cells=n_cells, noise_sigma=20))
    arr = img.data
    fg = (arr > 125).astype(np.uint8)
    core = _purepy.erode_square(fg, 3)
    ys, xs = np.nonzero(core)
    pick = np.linspace(0, len(ys) - 1, n_cells).astype(int)
    seeds = (ys[pick], xs[pick], list(range(1, n_cells + 1)))

    cases = {
        "median 3x3": lambda k: k.median_filter(arr, 3),
        "median 7x7": lambda k: k.median_filter(arr, 7),
        "erode R=3": lambda k: k.erode_square(fg, 3),
        "components (8)": lambda k: k.label_components(fg, 8),
        "grow + fill": lambda k: k.grow(fg, core, *seeds, 8, True),
    }
    backends = _backend.available()
    names = sorted(backends)
    print(f"image {args.size}x{args.size}, best of {args.repeat}")
    print(f"{'kernel':<16}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases.items():
        t = {n: best_of(lambda: fn(backends[n]), args.repeat) for n in names}
        row = f"{label:<16}" + "".join(f"{t[n] * 1e3:>10.2f}ms" for n in names)
        if "cython" in t:
            row += f"{t['python'] / t['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
