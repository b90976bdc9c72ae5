"""Seed selection: ROI extraction, candidate filtering, K-means, snapping.

Candidates are foreground pixels whose whole ``r`` x ``r`` window is
foreground, which keeps seeds off region boundaries and away from isolated
outliers.  K-means runs over min-max normalized ``(x, y, intensity)``
features, and each centroid is replaced by the nearest real candidate.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ._backend import kernels
from .errors import NoCandidatesError, ParameterError
from .image import BinaryMask, GrayImage, Seed
from .preprocess import _check_odd

ROI_CONNECTIVITY = 8


@dataclass(frozen=True, eq=False)
class Roi:
    """One 8-connected foreground component."""

    id: int
    xs: np.ndarray
    ys: np.ndarray

    @property
    def area(self) -> int:
        return int(self.xs.size)

    @property
    def bbox(self) -> Tuple[int, int, int, int]:
        return int(self.xs.min()), int(self.ys.min()), int(self.xs.max()), int(self.ys.max())

    @property
    def pixels(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(zip(self.xs.tolist(), self.ys.tolist()))

    def __repr__(self):
        return f"Roi(id={self.id}, area={self.area}, bbox={self.bbox})"


def roi_label_map(rois: Sequence[Roi], shape: Tuple[int, int]) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int32)
    for roi in rois:
        out[roi.ys, roi.xs] = roi.id
    return out


def extract_rois(mask: BinaryMask, min_area: int = 5) -> List[Roi]:
    """8-connected components with at least ``min_area`` pixels.

    Ids run 1..n in raster order of each component's first pixel.
    """
    if min_area < 1:
        raise ParameterError(f"min_area must be >= 1, got {min_area}")
    labels, n = kernels.label_components(mask.data.view(np.uint8), ROI_CONNECTIVITY)
    if n == 0:
        return []
    flat = labels.ravel()
    order = np.argsort(flat, kind="stable")
    counts = np.bincount(flat, minlength=n + 1)
    bounds = np.cumsum(counts)
    w = mask.width
    rois = []
    for lab in range(1, n + 1):
        if counts[lab] < min_area:
            continue
        idx = order[bounds[lab - 1] : bounds[lab]]
        ys, xs = np.divmod(idx, w)
        rois.append(Roi(len(rois) + 1, xs.astype(np.int64), ys.astype(np.int64)))
    return rois


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """Seed candidates in raster order."""

    xs: np.ndarray
    ys: np.ndarray
    intensity: np.ndarray
    roi_id: np.ndarray

    def __len__(self) -> int:
        return int(self.xs.size)

    @property
    def entries(self) -> List[Tuple[int, int, int, int]]:
        return list(zip(self.xs.tolist(), self.ys.tolist(), self.intensity.tolist(), self.roi_id.tolist()))


def erode(mask: BinaryMask, r: int) -> BinaryMask:
    """Pixels whose full ``r`` x ``r`` window is inside the image and foreground."""
    _check_odd(r, "R")
    return BinaryMask(kernels.erode_square(mask.data.view(np.uint8), int(r)))


def filter_candidates(mask: BinaryMask, rois: Sequence[Roi], r: int, img: GrayImage) -> CandidateSet:
    """Drop boundary pixels and outliers; tag survivors with ROI id and intensity."""
    _check_odd(r, "R")
    if img.shape != mask.shape:
        raise ParameterError(f"image {img.shape} and mask {mask.shape} differ in shape")
    core = erode(mask, r).data
    owner = roi_label_map(rois, mask.shape)
    keep = core & (owner > 0)
    ys, xs = np.nonzero(keep)
    return CandidateSet(
        xs=xs.astype(np.int64),
        ys=ys.astype(np.int64),
        intensity=img.data[ys, xs].astype(np.int64),
        roi_id=owner[ys, xs].astype(np.int64),
    )


@dataclass(frozen=True, eq=False)
class FeatureSet:
    """Normalized ``(fx, fy, fi)`` rows plus the constants that produced them."""

    values: np.ndarray
    mins: np.ndarray
    maxs: np.ndarray

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def normalize(self, raw) -> np.ndarray:
        raw = np.asarray(raw, dtype=np.float64)
        span = self.maxs - self.mins
        safe = np.where(span > 0, span, 1.0)
        return np.where(span > 0, (raw - self.mins) / safe, 0.5)

    def denormalize(self, feats) -> np.ndarray:
        """Inverse of :meth:`normalize`; constant dimensions map back to their value."""
        feats = np.asarray(feats, dtype=np.float64)
        return self.mins + feats * (self.maxs - self.mins)


def extract_features(candidates: CandidateSet) -> FeatureSet:
    if len(candidates) == 0:
        raise NoCandidatesError("no seed candidates survive the neighbourhood filter")
    raw = np.column_stack([candidates.xs, candidates.ys, candidates.intensity]).astype(np.float64)
    mins = raw.min(axis=0)
    maxs = raw.max(axis=0)
    fs = FeatureSet(np.empty(0), mins, maxs)
    return FeatureSet(fs.normalize(raw), mins, maxs)


@dataclass(frozen=True, eq=False)
class KmeansModel:
    k: int
    centroids: np.ndarray
    assignments: np.ndarray
    inertia: float
    iterations: int
    rng_seed: int
    inertia_history: Tuple[float, ...] = field(default=())


def _sq_dists(x: np.ndarray, c: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - c[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _kmeanspp(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = ((x - x[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            nxt = int(rng.choice(n, p=d2 / total))
        else:
            # every remaining point coincides with a chosen centre
            taken = set(chosen)
            nxt = next(i for i in range(n) if i not in taken)
        chosen.append(nxt)
        d2 = np.minimum(d2, ((x - x[nxt]) ** 2).sum(axis=1))
    return x[chosen].copy()


def _assign(x: np.ndarray, c: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    d = _sq_dists(x, c)
    a = np.argmin(d, axis=1)
    cost = d[np.arange(x.shape[0]), a]
    k = c.shape[0]
    for j in range(k):
        if np.any(a == j):
            continue
        sizes = np.bincount(a, minlength=k)
        donors = sizes[a] > 1
        pool = np.where(donors, cost, -1.0)
        far = int(np.argmax(pool))
        a[far] = j
        c[j] = x[far]
        cost[far] = 0.0
    return a, cost


def _lloyd(x, c, max_iter, tol):
    history = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        a, cost = _assign(x, c)
        history.append(float(cost.sum()))
        new_c = np.vstack([x[a == j].mean(axis=0) for j in range(c.shape[0])])
        shift = float(np.sqrt(((new_c - c) ** 2).sum(axis=1)).max())
        c = new_c
        if shift < tol:
            break
    a, cost = _assign(x, c)
    history.append(float(cost.sum()))
    return a, history, iterations


def _transfer_refine(x: np.ndarray, a: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray, float]:
    """Single-point transfers (Hartigan's rule) until none lowers the inertia.

    Each step applies the best move over all points; moving ``x`` from
    cluster A to B changes the inertia by
    ``|B|/(|B|+1) |x-c_B|^2 - |A|/(|A|-1) |x-c_A|^2``.
    Clusters are never emptied.
    """
    a = a.copy()
    n = x.shape[0]
    rows = np.arange(n)
    sizes = np.bincount(a, minlength=k).astype(np.float64)
    sums = np.zeros((k, x.shape[1]))
    np.add.at(sums, a, x)
    while True:
        c = sums / sizes[:, None]
        d = _sq_dists(x, c)
        own = d[rows, a]
        na = sizes[a]
        movable = na > 1
        out_gain = np.where(movable, na / np.where(movable, na - 1, 1) * own, 0.0)
        delta = sizes[None, :] / (sizes[None, :] + 1) * d - out_gain[:, None]
        delta[rows, a] = np.inf
        delta[~movable] = np.inf
        i, j = np.unravel_index(int(np.argmin(delta)), delta.shape)
        inertia = float(own.sum())
        if not delta[i, j] < -1e-12 * max(1.0, inertia):
            return a, c, inertia
        src = a[i]
        sizes[src] -= 1
        sums[src] -= x[i]
        sizes[j] += 1
        sums[j] += x[i]
        a[i] = j


def kmeans(
    features,
    k: int,
    rng_seed: int = 0,
    max_iter: int = 300,
    tol: float = 1e-6,
    n_init: int = 20,
) -> KmeansModel:
    """Lloyd's algorithm from k-means++ starts, polished by point transfers.

    ``n_init`` starts are drawn from one generator seeded with ``rng_seed``;
    the run with the lowest final inertia is kept (earliest on ties).
    Empty clusters take the point farthest from its own centroid.
    ``inertia_history`` records the inertia after every assignment step
    followed by the inertia after refinement.
    """
    x = np.asarray(getattr(features, "values", features), dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ParameterError("kmeans needs a non-empty 2D feature array")
    n = x.shape[0]
    if isinstance(k, bool) or not 1 <= k <= n:
        raise ParameterError(f"k must satisfy 1 <= k <= {n}, got {k}")
    if n_init < 1 or max_iter < 1:
        raise ParameterError("n_init and max_iter must be >= 1")
    rng = np.random.default_rng(rng_seed)
    best = None
    for _ in range(n_init):
        a, history, iterations = _lloyd(x, _kmeanspp(x, k, rng), max_iter, tol)
        a, c, inertia = _transfer_refine(x, a, k)
        history.append(inertia)
        if best is None or history[-1] < best[2][-1]:
            best = (c, a, history, iterations)
    c, a, history, iterations = best
    return KmeansModel(
        k=k,
        centroids=c,
        assignments=a,
        inertia=history[-1],
        iterations=iterations,
        rng_seed=rng_seed,
        inertia_history=tuple(history),
    )


def _nearest(values: np.ndarray, point: np.ndarray) -> int:
    d = ((values - point) ** 2).sum(axis=1)
    return int(np.argmin(d))


def select_seeds(model: KmeansModel, candidates: CandidateSet, features: FeatureSet) -> Tuple[Seed, ...]:
    """Snap centroids to candidates, then give every seedless ROI one seed.

    Returned seeds are numbered 1..n in raster order.
    """
    values = features.values
    picked: List[int] = []
    for centroid in model.centroids:
        i = _nearest(values, centroid)
        if i not in picked:
            picked.append(i)

    seeded = {int(candidates.roi_id[i]) for i in picked}
    for roi in np.unique(candidates.roi_id).tolist():
        if roi in seeded:
            continue
        members = np.flatnonzero(candidates.roi_id == roi)
        sub = values[members]
        picked.append(int(members[_nearest(sub, sub.mean(axis=0))]))

    picked.sort(key=lambda i: (int(candidates.ys[i]), int(candidates.xs[i])))
    return tuple(
        Seed(id=n, x=int(candidates.xs[i]), y=int(candidates.ys[i]), intensity=int(candidates.intensity[i]))
        for n, i in enumerate(picked, start=1)
    )


def seeds_to_csv(seeds: Sequence[Seed]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "x", "y", "intensity"])
    for s in seeds:
        writer.writerow([s.id, s.x, s.y, s.intensity])
    return buf.getvalue()


def seeds_from_csv(text: str) -> Tuple[Seed, ...]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ["id", "x", "y", "intensity"]:
        raise ValueError(f"unexpected seed CSV header: {reader.fieldnames}")
    return tuple(Seed(int(r["id"]), int(r["x"]), int(r["y"]), int(r["intensity"])) for r in reader)


def select_from_image(
    img: GrayImage,
    mask: BinaryMask,
    k: int,
    r: int = 3,
    min_area: int = 5,
    rng_seed: int = 0,
    rois: Optional[Sequence[Roi]] = None,
):
    """ROIs -> candidates -> features -> K-means -> seeds, for one image."""
    if rois is None:
        rois = extract_rois(mask, min_area)
    candidates = filter_candidates(mask, rois, r, img)
    features = extract_features(candidates)
    model = kmeans(features, k, rng_seed=rng_seed)
    return select_seeds(model, candidates, features), candidates, features, model
