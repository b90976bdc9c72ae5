"""Reference kernels in Python/numpy.

Used when the compiled ``_kernels`` extension is unavailable, and as the
second implementation the compiled kernels are tested against.  Every
function here has the same signature and output as its counterpart in
``_kernels.pyx``.
"""
from collections import deque

import numpy as np

# (dx, dy) in the order N, S, W, E, NW, NE, SW, SE
OFFSETS_8 = ((0, -1), (0, 1), (-1, 0), (1, 0), (-1, -1), (1, -1), (-1, 1), (1, 1))


def median_filter(img, window):
    """Median over ``window`` x ``window`` with replicate-edge padding (uint8 in/out)."""
    img = np.ascontiguousarray(img, dtype=np.uint8)
    if window == 1:
        return img.copy()
    rad = window // 2
    padded = np.pad(img, rad, mode="edge")
    views = np.lib.stride_tricks.sliding_window_view(padded, (window, window))
    flat = views.reshape(img.shape[0], img.shape[1], window * window)
    # odd sample count, so the middle order statistic is an input value
    return np.partition(flat, (window * window) // 2, axis=2)[:, :, (window * window) // 2].astype(np.uint8)


def erode_square(mask, r):
    """1 where the full ``r`` x ``r`` window lies in-bounds and is all foreground."""
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    h, w = mask.shape
    rad = r // 2
    out = np.zeros((h, w), dtype=np.uint8)
    if h < r or w < r:
        return out
    sat = np.zeros((h + 1, w + 1), dtype=np.int64)
    sat[1:, 1:] = (mask != 0).cumsum(0).cumsum(1)
    counts = sat[r:, r:] - sat[:-r, r:] - sat[r:, :-r] + sat[:-r, :-r]
    out[rad : h - rad, rad : w - rad] = counts == r * r
    return out


def label_components(mask, connectivity):
    """Connected components, labels 1..n in raster order of first pixel."""
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    h, w = mask.shape
    offsets = OFFSETS_8[:connectivity]
    fg = mask.ravel().tolist()
    labels = [0] * (h * w)
    n = 0
    for start in range(h * w):
        if not fg[start] or labels[start]:
            continue
        n += 1
        labels[start] = n
        queue = deque([start])
        while queue:
            p = queue.popleft()
            py, px = divmod(p, w)
            for dx, dy in offsets:
                qx, qy = px + dx, py + dy
                if 0 <= qx < w and 0 <= qy < h:
                    q = qy * w + qx
                    if fg[q] and not labels[q]:
                        labels[q] = n
                        queue.append(q)
    return np.asarray(labels, dtype=np.int32).reshape(h, w), n


def grow(fg, core, seed_rows, seed_cols, seed_ids, connectivity, fill):
    """Multi-source FIFO growth over ``core``; optionally continue over ``fg``.

    Seeds must already be in ascending id order and inside ``core``.  The
    second phase re-walks the phase-one queue from its head, so every
    remaining foreground pixel is claimed by the region at the smallest
    breadth-first distance, ties going to whichever region reached the
    tied neighbour first.
    """
    fg = np.ascontiguousarray(fg, dtype=np.uint8)
    h, w = fg.shape
    offsets = OFFSETS_8[:connectivity]
    labels = [0] * (h * w)
    order = []
    for r, c, sid in zip(seed_rows, seed_cols, seed_ids):
        p = int(r) * w + int(c)
        if labels[p] == 0:
            labels[p] = int(sid)
            order.append(p)

    for domain in ([core, fg] if fill else [core]):
        allowed = np.ascontiguousarray(domain, dtype=np.uint8).ravel().tolist()
        head = 0
        while head < len(order):
            p = order[head]
            head += 1
            lab = labels[p]
            py, px = divmod(p, w)
            for dx, dy in offsets:
                qx, qy = px + dx, py + dy
                if 0 <= qx < w and 0 <= qy < h:
                    q = qy * w + qx
                    if allowed[q] and not labels[q]:
                        labels[q] = lab
                        order.append(q)
    return np.asarray(labels, dtype=np.int32).reshape(h, w)
