"""Ground-truth comparison of label maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .errors import ParameterError
from .image import LabelMap


def dice(a, b) -> float:
    """Dice coefficient of two pixel sets or two boolean masks.

    Two empty inputs score 1.
    """
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        a = np.asarray(a, dtype=bool)
        b = np.asarray(b, dtype=bool)
        inter = int(np.count_nonzero(a & b))
        size = int(np.count_nonzero(a)) + int(np.count_nonzero(b))
    else:
        a, b = set(a), set(b)
        inter = len(a & b)
        size = len(a) + len(b)
    if size == 0:
        return 1.0
    return 2.0 * inter / size


@dataclass(frozen=True)
class EvalReport:
    n_pred: int
    n_gt: int
    per_gt_dice: Dict[int, float] = field(default_factory=dict)
    mean_dice: float = 1.0
    split_count: int = 0
    merge_count: int = 0

    def to_text(self) -> str:
        lines = [
            f"n_pred={self.n_pred}",
            f"n_gt={self.n_gt}",
            f"mean_dice={self.mean_dice:.6f}",
            f"split_count={self.split_count}",
            f"merge_count={self.merge_count}",
        ]
        lines += [f"dice_{g}={d:.6f}" for g, d in sorted(self.per_gt_dice.items())]
        return "\n".join(lines) + "\n"


def evaluate(pred: LabelMap, gt: LabelMap) -> EvalReport:
    """Match predicted and ground-truth regions by pixel overlap.

    ``per_gt_dice`` holds each ground-truth region's best Dice over all
    predicted regions.  A region *covers* another when more than half of
    its own area lies inside it: a ground-truth region covered by two or
    more predicted regions counts as a split, and a predicted region that
    covers two or more ground-truth regions counts as a merge.
    """
    if pred.shape != gt.shape:
        raise ParameterError(f"label maps differ in shape: {pred.shape} vs {gt.shape}")
    p = pred.data.ravel()
    g = gt.data.ravel()
    p_ids = pred.label_values()
    g_ids = gt.label_values()

    # contingency table over non-zero labels only
    p_idx = {v: i for i, v in enumerate(p_ids)}
    g_idx = {v: i for i, v in enumerate(g_ids)}
    table = np.zeros((len(g_ids), len(p_ids)), dtype=np.int64)
    both = (p != 0) & (g != 0)
    if both.any():
        pairs, counts = np.unique(np.stack([g[both], p[both]]), axis=1, return_counts=True)
        for (gv, pv), c in zip(pairs.T.tolist(), counts.tolist()):
            table[g_idx[gv], p_idx[pv]] = c
    g_area = np.array([np.count_nonzero(g == v) for v in g_ids], dtype=np.int64)
    p_area = np.array([np.count_nonzero(p == v) for v in p_ids], dtype=np.int64)

    per_gt = {}
    for i, gv in enumerate(g_ids):
        if p_ids:
            scores = 2.0 * table[i] / (g_area[i] + p_area)
            per_gt[gv] = float(scores.max())
        else:
            per_gt[gv] = 0.0
    if g_ids:
        mean = float(np.mean(list(per_gt.values())))
    else:
        mean = 1.0 if not p_ids else 0.0

    pred_in_gt = 2 * table > p_area[None, :]  # > 50% of the predicted region
    gt_in_pred = 2 * table > g_area[:, None]  # > 50% of the ground-truth region
    split = int(np.count_nonzero(pred_in_gt.sum(axis=1) >= 2)) if p_ids else 0
    merge = int(np.count_nonzero(gt_in_pred.sum(axis=0) >= 2)) if g_ids else 0
    return EvalReport(
        n_pred=len(p_ids),
        n_gt=len(g_ids),
        per_gt_dice=per_gt,
        mean_dice=mean,
        split_count=split,
        merge_count=merge,
    )
