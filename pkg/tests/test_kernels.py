"""Each backend against the oracles, and the backends against each other."""
import numpy as np
import pytest

from oracles import components_unionfind, erosion_bruteforce, median_sort
from srgseg import _backend, _purepy


def test_backend_selected():
    assert _backend.NAME in _backend.available()


@pytest.mark.parametrize("window", [1, 3, 5])
def test_median(kernels, rng, window):
    for _ in range(20):
        img = rng.integers(0, 256, rng.integers(1, 12, 2)).astype(np.uint8)
        assert np.array_equal(kernels.median_filter(img, window), median_sort(img, window))


@pytest.mark.parametrize("r", [1, 3, 5])
def test_erosion(kernels, rng, r):
    for _ in range(20):
        m = (rng.random(rng.integers(1, 12, 2)) < 0.75).astype(np.uint8)
        out = kernels.erode_square(m, r)
        assert set(zip(*np.nonzero(out)[::-1])) == erosion_bruteforce(m, r)


@pytest.mark.parametrize("connectivity", [4, 8])
def test_components(kernels, rng, connectivity):
    for _ in range(20):
        m = (rng.random(rng.integers(1, 10, 2)) < 0.5).astype(np.uint8)
        labels, n = kernels.label_components(m, connectivity)
        comps = {frozenset(zip(*np.nonzero(labels == v)[::-1])) for v in range(1, n + 1)}
        assert comps == components_unionfind(m, connectivity)


def test_backends_agree_on_growth(rng):
    backends = _backend.available()
    if len(backends) < 2:
        pytest.skip("compiled kernels not built")
    cy = backends["cython"]
    for _ in range(100):
        h, w = rng.integers(4, 30, 2)
        fg = (rng.random((h, w)) < 0.75).astype(np.uint8)
        core = _purepy.erode_square(fg, 3)
        ys, xs = np.nonzero(core)
        if not len(ys):
            continue
        pick = rng.choice(len(ys), min(4, len(ys)), replace=False)
        ids = list(range(1, len(pick) + 1))
        for conn in (4, 8):
            for fill in (False, True):
                a = _purepy.grow(fg, core, ys[pick], xs[pick], ids, conn, fill)
                b = cy.grow(fg, core, ys[pick], xs[pick], ids, conn, fill)
                assert np.array_equal(a, b)


def test_backends_agree_on_large_median(rng):
    backends = _backend.available()
    if len(backends) < 2:
        pytest.skip("compiled kernels not built")
    img = rng.integers(0, 256, (64, 80)).astype(np.uint8)
    for window in (3, 7, 11):
        assert np.array_equal(_purepy.median_filter(img, window), backends["cython"].median_filter(img, window))
