import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import is_connected
from srgseg.errors import ParameterError, PlacementError
from srgseg.image import LabelMap
from srgseg.metrics import dice, evaluate
from srgseg.synth import SynthSpec, synth_cells


class TestDice:
    def test_identical(self):
        assert dice({(0, 0), (1, 0)}, {(0, 0), (1, 0)}) == 1.0

    def test_disjoint(self):
        assert dice({(0, 0)}, {(1, 1)}) == 0.0

    def test_half(self):
        a = {(0, 0), (1, 0), (2, 0), (3, 0)}
        b = {(2, 0), (3, 0), (4, 0), (5, 0)}
        assert dice(a, b) == 0.5

    def test_both_empty(self):
        assert dice(set(), set()) == 1.0

    def test_masks(self):
        a = np.array([[1, 1, 0]], bool)
        b = np.array([[0, 1, 1]], bool)
        assert dice(a, b) == 0.5

    @given(st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5))), st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5))))
    def test_symmetric_and_bounded(self, a, b):
        assert dice(a, b) == dice(b, a)
        assert 0.0 <= dice(a, b) <= 1.0


class TestEvaluate:
    def test_identity(self):
        gt = LabelMap([[1, 1, 0, 2], [1, 0, 0, 2]])
        rep = evaluate(gt, gt)
        assert (rep.mean_dice, rep.split_count, rep.merge_count) == (1.0, 0, 0)
        assert (rep.n_pred, rep.n_gt) == (2, 2)

    def test_split(self):
        # 4x2 ground truth: one region; prediction cuts it into left/right halves
        gt = LabelMap(np.ones((2, 4), int))
        pred = LabelMap([[1, 1, 2, 2], [1, 1, 2, 2]])
        rep = evaluate(pred, gt)
        assert rep.split_count == 1
        assert rep.merge_count == 0
        assert rep.per_gt_dice == {1: pytest.approx(2 * 4 / (8 + 4))}

    def test_merge(self):
        gt = LabelMap([[1, 1, 2, 2], [1, 1, 2, 2]])
        pred = LabelMap(np.ones((2, 4), int))
        rep = evaluate(pred, gt)
        assert rep.merge_count == 1
        assert rep.split_count == 0
        assert rep.mean_dice == pytest.approx(2 * 4 / 12)

    def test_no_prediction(self):
        gt = LabelMap([[1, 0]])
        rep = evaluate(LabelMap([[0, 0]]), gt)
        assert rep.mean_dice == 0.0 and rep.n_pred == 0

    def test_shape_mismatch(self):
        with pytest.raises(ParameterError):
            evaluate(LabelMap([[0]]), LabelMap([[0, 0]]))

    def test_text_block(self):
        gt = LabelMap([[1, 2]])
        text = evaluate(gt, gt).to_text()
        assert "mean_dice=1.000000\n" in text
        assert all("=" in line for line in text.splitlines())

    @settings(max_examples=60, deadline=None)
    @given(arrays(np.int64, st.tuples(st.integers(1, 8), st.integers(1, 8)), elements=st.integers(0, 5)))
    def test_self_evaluation(self, arr):
        lm = LabelMap(arr)
        rep = evaluate(lm, lm)
        assert rep.mean_dice == 1.0
        assert rep.split_count == 0 and rep.merge_count == 0


class TestSynth:
    def test_noise_free_two_levels(self):
        img, gt = synth_cells(SynthSpec(width=64, height=64, n_cells=1, radius_range=(5, 8), noise_sigma=0))
        assert sorted(np.unique(img.data).tolist()) == [50, 200]

    def test_deterministic(self):
        spec = SynthSpec(rng_seed=7)
        a, b = synth_cells(spec), synth_cells(spec)
        assert a[0].data.tobytes() == b[0].data.tobytes()
        assert a[1] == b[1]

    def test_four_cells(self):
        _, gt = synth_cells(SynthSpec(n_cells=4))
        assert sorted(np.unique(gt.data).tolist()) == [0, 1, 2, 3, 4]

    @pytest.mark.parametrize("seed", range(5))
    def test_regions_disjoint_connected_and_gapped(self, seed):
        _, gt = synth_cells(SynthSpec(n_cells=6, radius_range=(8, 20), rng_seed=seed))
        for v in gt.label_values():
            pix = set(zip(*np.nonzero(gt.data == v)[::-1]))
            assert is_connected(pix, 8)
        # no two different cells within 2 pixels (chessboard) of each other
        padded = np.pad(gt.data, 2)
        h, w = gt.shape
        for dy in range(-2, 3):
            for dx in range(-2, 3):
                shifted = padded[2 + dy : 2 + dy + h, 2 + dx : 2 + dx + w]
                clash = (gt.data > 0) & (shifted > 0) & (shifted != gt.data)
                assert not clash.any()

    def test_placement_failure(self):
        with pytest.raises(PlacementError, match="smaller radius"):
            synth_cells(SynthSpec(width=40, height=40, n_cells=5, radius_range=(15, 15)))

    def test_spec_validation(self):
        with pytest.raises(ParameterError):
            SynthSpec(fg_mean=50, bg_mean=50)
        with pytest.raises(ParameterError):
            SynthSpec(radius_range=(5, 2))
