# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.  Signatures and outputs match ``srgseg._purepy``."""
import numpy as np

cimport numpy as cnp
from libc.string cimport memset

cnp.import_array()

# N, S, W, E, NW, NE, SW, SE
cdef int DX[8]
cdef int DY[8]
DX[:] = [0, 0, -1, 1, -1, 1, -1, 1]
DY[:] = [-1, 1, 0, 0, -1, -1, 1, 1]


cdef inline Py_ssize_t _clamp(Py_ssize_t v, Py_ssize_t hi) nogil:
    if v < 0:
        return 0
    if v > hi:
        return hi
    return v


def median_filter(img, int window):
    """Huang's sliding-histogram median; ``below`` counts samples < ``med``."""
    cdef const cnp.uint8_t[:, ::1] src = np.ascontiguousarray(img, dtype=np.uint8)
    cdef Py_ssize_t h = src.shape[0], w = src.shape[1]
    out_arr = np.empty((h, w), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] out = out_arr
    cdef int rad = window // 2
    cdef int rank = (window * window) // 2
    cdef int hist[256]
    cdef Py_ssize_t y, x, dy, dx, yy, col_out, col_in
    cdef int med, below, v
    with nogil:
        for y in range(h):
            memset(hist, 0, sizeof(hist))
            for dy in range(-rad, rad + 1):
                yy = _clamp(y + dy, h - 1)
                for dx in range(-rad, rad + 1):
                    hist[src[yy, _clamp(dx, w - 1)]] += 1
            med = 0
            below = 0
            while below + hist[med] <= rank:
                below += hist[med]
                med += 1
            out[y, 0] = <cnp.uint8_t>med
            for x in range(1, w):
                col_out = _clamp(x - 1 - rad, w - 1)
                col_in = _clamp(x + rad, w - 1)
                for dy in range(-rad, rad + 1):
                    yy = _clamp(y + dy, h - 1)
                    v = src[yy, col_out]
                    hist[v] -= 1
                    if v < med:
                        below -= 1
                    v = src[yy, col_in]
                    hist[v] += 1
                    if v < med:
                        below += 1
                while below > rank:
                    med -= 1
                    below -= hist[med]
                while below + hist[med] <= rank:
                    below += hist[med]
                    med += 1
                out[y, x] = <cnp.uint8_t>med
    return out_arr


def erode_square(mask, int r):
    cdef const cnp.uint8_t[:, ::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = m.shape[0], w = m.shape[1]
    out_arr = np.zeros((h, w), dtype=np.uint8)
    if h < r or w < r:
        return out_arr
    cdef cnp.uint8_t[:, ::1] out = out_arr
    sat_arr = np.zeros((h + 1, w + 1), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] sat = sat_arr
    cdef Py_ssize_t y, x
    cdef int rad = r // 2
    cdef cnp.int64_t row, full = r * r
    with nogil:
        for y in range(h):
            row = 0
            for x in range(w):
                row += m[y, x] != 0
                sat[y + 1, x + 1] = sat[y, x + 1] + row
        for y in range(rad, h - rad):
            for x in range(rad, w - rad):
                if (sat[y + rad + 1, x + rad + 1] - sat[y - rad, x + rad + 1]
                        - sat[y + rad + 1, x - rad] + sat[y - rad, x - rad]) == full:
                    out[y, x] = 1
    return out_arr


def label_components(mask, int connectivity):
    cdef const cnp.uint8_t[:, ::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = m.shape[0], w = m.shape[1]
    labels_arr = np.zeros((h, w), dtype=np.int32)
    queue_arr = np.empty(h * w, dtype=np.intp)
    cdef cnp.int32_t[:, ::1] labels = labels_arr
    cdef Py_ssize_t[::1] queue = queue_arr
    cdef Py_ssize_t y, x, qx, qy, head, tail, p
    cdef int k, n = 0
    with nogil:
        for y in range(h):
            for x in range(w):
                if m[y, x] == 0 or labels[y, x] != 0:
                    continue
                n += 1
                labels[y, x] = n
                head = 0
                tail = 1
                queue[0] = y * w + x
                while head < tail:
                    p = queue[head]
                    head += 1
                    for k in range(connectivity):
                        qx = p % w + DX[k]
                        qy = p // w + DY[k]
                        if 0 <= qx < w and 0 <= qy < h and m[qy, qx] != 0 and labels[qy, qx] == 0:
                            labels[qy, qx] = n
                            queue[tail] = qy * w + qx
                            tail += 1
    return labels_arr, n


cdef Py_ssize_t _bfs(const cnp.uint8_t[:, ::1] allowed, cnp.int32_t[:, ::1] labels,
                     Py_ssize_t[::1] order, Py_ssize_t tail, int connectivity) nogil:
    cdef Py_ssize_t h = allowed.shape[0], w = allowed.shape[1]
    cdef Py_ssize_t head = 0, p, px, py, qx, qy
    cdef int k
    cdef cnp.int32_t lab
    while head < tail:
        p = order[head]
        head += 1
        px = p % w
        py = p // w
        lab = labels[py, px]
        for k in range(connectivity):
            qx = px + DX[k]
            qy = py + DY[k]
            if 0 <= qx < w and 0 <= qy < h and allowed[qy, qx] != 0 and labels[qy, qx] == 0:
                labels[qy, qx] = lab
                order[tail] = qy * w + qx
                tail += 1
    return tail


def grow(fg, core, seed_rows, seed_cols, seed_ids, int connectivity, bint fill):
    cdef const cnp.uint8_t[:, ::1] fgv = np.ascontiguousarray(fg, dtype=np.uint8)
    cdef const cnp.uint8_t[:, ::1] corev = np.ascontiguousarray(core, dtype=np.uint8)
    cdef Py_ssize_t h = fgv.shape[0], w = fgv.shape[1]
    labels_arr = np.zeros((h, w), dtype=np.int32)
    order_arr = np.empty(h * w, dtype=np.intp)
    cdef cnp.int32_t[:, ::1] labels = labels_arr
    cdef Py_ssize_t[::1] order = order_arr
    cdef Py_ssize_t tail = 0, r, c
    for r, c, sid in zip(seed_rows, seed_cols, seed_ids):
        if labels[r, c] == 0:
            labels[r, c] = <cnp.int32_t>sid
            order[tail] = r * w + c
            tail += 1
    with nogil:
        tail = _bfs(corev, labels, order, tail, connectivity)
        if fill:
            _bfs(fgv, labels, order, tail, connectivity)
    return labels_arr
