import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import erosion_bruteforce, flood_fill, is_connected
from srgseg.errors import ParameterError, RejectedSeedError
from srgseg.growing import GrowConfig, baseline_otsu_labels, grow_regions, neighbors
from srgseg.image import GrayImage, Seed
from srgseg.seeds import extract_rois


def _pixels(lm, label):
    ys, xs = np.nonzero(lm.data == label)
    return set(zip(xs.tolist(), ys.tolist()))


def bridge_toy():
    """15x7: two 5x5 blobs joined on row 3 by a 1-pixel bridge."""
    m = np.zeros((7, 15), bool)
    m[1:6, 1:6] = True
    m[1:6, 9:14] = True
    m[3, 6:9] = True
    return GrayImage(np.where(m, 200, 50)), m


class TestNeighbors:
    def test_interior_4(self):
        assert neighbors((2, 2), 4, (5, 5)) == [(2, 1), (2, 3), (1, 2), (3, 2)]

    def test_corner_8(self):
        assert neighbors((0, 0), 8, (5, 5)) == [(0, 1), (1, 0), (1, 1)]

    def test_interior_8_order(self):
        assert neighbors((2, 2), 8, (5, 5)) == [
            (2, 1), (2, 3), (1, 2), (3, 2), (1, 1), (3, 1), (1, 3), (3, 3)
        ]

    def test_bad_connectivity(self):
        with pytest.raises(ParameterError):
            neighbors((0, 0), 6, (3, 3))


class TestGrow:
    def test_single_blob_fully_labeled(self):
        m = np.zeros((11, 11), bool)
        m[2:9, 2:9] = True
        img = GrayImage(np.where(m, 200, 50))
        lm = grow_regions(img, [Seed(1, 5, 5, 200)], GrowConfig(threshold=50, r=3, connectivity=4))
        assert _pixels(lm, 1) == flood_fill(m, (5, 5), 4)
        assert np.all(lm.data[~m] == 0)

    def test_bridge_split_between_seeds(self):
        img, m = bridge_toy()
        core = erosion_bruteforce(m, 3)
        assert not {(x, 3) for x in range(6, 9)} & core
        lm = grow_regions(img, [Seed(1, 3, 3, 200), Seed(2, 11, 3, 200)], GrowConfig(threshold=50, r=3))
        a, b = _pixels(lm, 1), _pixels(lm, 2)
        left = {(x, y) for x in range(1, 6) for y in range(1, 6)}
        right = {(x, y) for x in range(9, 14) for y in range(1, 6)}
        assert left <= a and right <= b
        assert not a & right and not b & left
        # the three bridge pixels are shared out by distance, middle by FIFO order
        assert (6, 3) in a and (8, 3) in b and (7, 3) in a | b
        assert a | b == set(zip(*np.nonzero(m)[::-1]))

    def test_otsu_only_leaks_across_bridge(self):
        img, m = bridge_toy()
        lm = grow_regions(img, [Seed(1, 3, 3, 200)], GrowConfig(threshold=50, r=3, fill_mode="otsu_only"))
        assert _pixels(lm, 1) == flood_fill(m, (3, 3), 8)
        assert (11, 3) in _pixels(lm, 1)

    def test_seedless_roi_stays_background(self):
        m = np.zeros((7, 15), bool)
        m[1:6, 1:6] = True
        m[1:6, 9:14] = True
        lm = grow_regions(GrayImage(np.where(m, 200, 50)), [Seed(1, 3, 3, 200)], GrowConfig(threshold=50))
        assert lm.data[3, 11] == 0
        assert lm.n_regions == 1

    def test_rejects_boundary_seed(self):
        img, _ = bridge_toy()
        with pytest.raises(RejectedSeedError) as err:
            grow_regions(img, [Seed(4, 1, 1, 200)], GrowConfig(threshold=50, r=3))
        assert err.value.seed_id == 4

    def test_rejects_duplicates(self):
        img, _ = bridge_toy()
        with pytest.raises(RejectedSeedError):
            grow_regions(img, [Seed(1, 3, 3, 200), Seed(1, 2, 2, 200)], GrowConfig(threshold=50))
        with pytest.raises(RejectedSeedError):
            grow_regions(img, [Seed(1, 3, 3, 200), Seed(2, 3, 3, 200)], GrowConfig(threshold=50))

    def test_dark_polarity(self):
        m = np.zeros((9, 9), bool)
        m[2:7, 2:7] = True
        img = GrayImage(np.where(m, 20, 220))
        lm = grow_regions(img, [Seed(1, 4, 4, 20)], GrowConfig(threshold=100, polarity="dark"))
        assert _pixels(lm, 1) == set(zip(*np.nonzero(m)[::-1]))

    def test_config_validation(self):
        with pytest.raises(ParameterError):
            GrowConfig(threshold=10, r=2)
        with pytest.raises(ParameterError):
            GrowConfig(threshold=10, connectivity=6)
        with pytest.raises(ParameterError):
            GrowConfig(threshold=300)


@st.composite
def image_and_seeds(draw):
    h = draw(st.integers(5, 14))
    w = draw(st.integers(5, 14))
    arr = draw(arrays(np.uint8, (h, w), elements=st.sampled_from([30, 220])))
    r = draw(st.sampled_from([1, 3]))
    core = sorted(erosion_bruteforce(arr > 100, r))
    if not core:
        return arr, r, []
    idx = draw(st.lists(st.integers(0, len(core) - 1), min_size=1, max_size=4, unique=True))
    seeds = [Seed(i + 1, core[j][0], core[j][1], int(arr[core[j][1], core[j][0]])) for i, j in enumerate(idx)]
    return arr, r, seeds


@settings(max_examples=120, deadline=None)
@given(image_and_seeds(), st.sampled_from([4, 8]), st.sampled_from(["eroded_core_then_fill", "otsu_only"]))
def test_growth_invariants(case, connectivity, fill_mode):
    arr, r, seeds = case
    if not seeds:
        return
    img = GrayImage(arr)
    cfg = GrowConfig(threshold=100, r=r, connectivity=connectivity, fill_mode=fill_mode)
    lm = grow_regions(img, seeds, cfg)
    fg = arr > 100
    assert np.all(fg[lm.data > 0])
    for s in seeds:
        assert lm[s.x, s.y] == s.id
        assert is_connected(_pixels(lm, s.id), connectivity)
    assert lm.is_compact()
    assert grow_regions(img, seeds, cfg) == lm
    if fill_mode == "eroded_core_then_fill":
        # every foreground pixel reachable from a seed gets some label
        reach = set().union(*(flood_fill(fg, (s.x, s.y), connectivity) for s in seeds))
        assert set(zip(*np.nonzero(lm.data)[::-1])) == reach


@settings(max_examples=80, deadline=None)
@given(image_and_seeds(), st.sampled_from([4, 8]))
def test_r1_otsu_only_single_seed_is_flood_fill(case, connectivity):
    arr, _, seeds = case
    if not seeds:
        return
    s = seeds[0]
    lm = grow_regions(GrayImage(arr), [Seed(1, s.x, s.y, s.intensity)], GrowConfig(threshold=100, r=1, connectivity=connectivity, fill_mode="otsu_only"))
    assert _pixels(lm, 1) == flood_fill(arr > 100, (s.x, s.y), connectivity)


class TestBaseline:
    def test_empty(self):
        lm = baseline_otsu_labels(GrayImage(np.full((4, 4), 10)), 100)
        assert lm.labels == [0] * 16

    def test_two_blobs(self):
        img = GrayImage([[200, 0, 200], [200, 0, 200]])
        lm = baseline_otsu_labels(img, 100)
        assert lm.label_values() == [1, 2]

    @settings(max_examples=60, deadline=None)
    @given(arrays(np.bool_, st.tuples(st.integers(1, 12), st.integers(1, 12))))
    def test_matches_rois(self, m):
        from srgseg.image import BinaryMask

        lm = baseline_otsu_labels(GrayImage(np.where(m, 200, 10)), 100)
        rois = extract_rois(BinaryMask(m), 1)
        assert {frozenset(_pixels(lm, v)) for v in lm.label_values()} == {r.pixels for r in rois}
