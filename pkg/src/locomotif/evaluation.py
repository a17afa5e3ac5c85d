"""Precision, recall and F1 for discovered motif sets against ground truth.

Segments are matched one-to-one on intersection-over-union (> 0.5), the
per-set match counts are aligned with an optimal assignment, and precision
and recall are micro-averaged over the aligned diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Segment, seg_intersection_len


@dataclass(frozen=True)
class GroundTruth:
    motif_sets: tuple[tuple[Segment, ...], ...]

    def __init__(self, motif_sets):
        sets = tuple(tuple(Segment(*s) for s in ms) for ms in motif_sets)
        object.__setattr__(self, "motif_sets", sets)
        flat = sorted(s for ms in sets for s in ms)
        for a, c in zip(flat, flat[1:]):
            if seg_intersection_len(a, c) > 0:
                raise ValueError(f"ground-truth segments {a} and {c} overlap")

    def __len__(self) -> int:
        return len(self.motif_sets)


@dataclass(frozen=True)
class MatchingMatrix:
    """Aligned match counts with unmatched margins.

    `matrix` has shape ``(k_gt + 1, k_found + 1)``. `gt_order` and
    `found_order` give the original set index placed at each row / column.
    """

    matrix: np.ndarray
    gt_order: tuple[int, ...]
    found_order: tuple[int, ...]


def jaccard(a: Segment, b: Segment) -> float:
    inter = seg_intersection_len(a, b)
    return inter / (len(a) + len(b) - inter)


def match_segments(gt_segments: Sequence[Segment],
                   discovered: Sequence[Segment]) -> list[int | None]:
    """For each ground-truth segment, the index of its matched discovered segment.

    A match needs intersection-over-union above 0.5; the highest ratio wins
    and ties go to the discovered segment with the smallest start (then the
    lowest index). Because ground-truth segments are disjoint, no discovered
    segment can be matched twice.
    """
    out: list[int | None] = []
    for beta in gt_segments:
        best, best_key = None, None
        for idx, alpha in enumerate(discovered):
            r = jaccard(alpha, beta)
            if r <= 0.5:
                continue
            key = (-r, alpha.b, idx)
            if best_key is None or key < best_key:
                best, best_key = idx, key
        out.append(best)
    return out


def count_matrix(gt: GroundTruth, found: Sequence[Sequence[Segment]]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Raw counts: matches per (gt set, found set), unmatched per gt set, unmatched per found set."""
    flat = [(j, Segment(*s)) for j, ms in enumerate(found) for s in ms]
    segs = [s for _, s in flat]
    counts = np.zeros((len(gt), len(found)), dtype=np.int64)
    gt_missed = np.zeros(len(gt), dtype=np.int64)
    used = np.zeros(len(flat), dtype=bool)
    for i, ms in enumerate(gt.motif_sets):
        for m in match_segments(ms, segs):
            if m is None:
                gt_missed[i] += 1
            else:
                counts[i, flat[m][0]] += 1
                used[m] = True
    found_missed = np.zeros(len(found), dtype=np.int64)
    for (j, _), u in zip(flat, used):
        if not u:
            found_missed[j] += 1
    return counts, gt_missed, found_missed


def optimal_alignment(counts: np.ndarray, col_sizes=None) -> tuple[list[int], list[int]]:
    """Row and column orders that put a maximum-weight assignment on the diagonal.

    Among assignments with the maximal diagonal sum, the one whose assigned
    columns have the smallest total `col_sizes` (default: column sums of
    `counts`) is chosen, so the resulting precision does not depend on the
    input order of the sets. Unassigned rows/columns follow in their
    original order.
    """
    counts = np.asarray(counts, dtype=np.int64)
    k_gt, k_found = counts.shape
    if counts.size:
        sizes = counts.sum(axis=0) if col_sizes is None else np.asarray(col_sizes, dtype=np.int64)
        # lexicographic objective in exact integers: trace first, then -sizes
        big = int(sizes.sum()) + 1
        rows, cols = linear_sum_assignment(counts * big - sizes[None, :], maximize=True)
    else:
        rows, cols = np.zeros(0, dtype=int), np.zeros(0, dtype=int)
    rest_r = [i for i in range(k_gt) if i not in set(rows.tolist())]
    rest_c = [j for j in range(k_found) if j not in set(cols.tolist())]
    return rows.tolist() + rest_r, cols.tolist() + rest_c


def matching_matrix(gt: GroundTruth, found: Sequence[Sequence[Segment]]) -> MatchingMatrix:
    """Matching matrix with rows/columns permuted to maximize the diagonal."""
    counts, gt_missed, found_missed = count_matrix(gt, found)
    k_gt, k_found = counts.shape
    gt_order, found_order = optimal_alignment(counts, counts.sum(axis=0) + found_missed)
    m = np.zeros((k_gt + 1, k_found + 1), dtype=np.int64)
    m[:k_gt, :k_found] = counts[np.ix_(gt_order, found_order)]
    m[:k_gt, k_found] = gt_missed[gt_order]
    m[k_gt, :k_found] = found_missed[found_order]
    return MatchingMatrix(m, tuple(int(i) for i in gt_order), tuple(int(j) for j in found_order))


def precision_recall_f1(mm: MatchingMatrix | np.ndarray) -> tuple[float, float, float]:
    """Micro-averaged precision, recall and their harmonic mean.

    Zero denominators give 0 for the affected metric.
    """
    m = mm.matrix if isinstance(mm, MatchingMatrix) else np.asarray(mm)
    k_gt, k_found = m.shape[0] - 1, m.shape[1] - 1
    k = min(k_gt, k_found)
    tp = float(np.trace(m[:k, :k]))
    pred = float(m[:, :k].sum())
    actual = float(m[:k_gt, :].sum())
    precision = tp / pred if pred > 0 else 0.0
    recall = tp / actual if actual > 0 else 0.0
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def evaluate(gt: GroundTruth, found: Sequence[Sequence[Segment]]) -> tuple[float, float, float]:
    return precision_recall_f1(matching_matrix(gt, found))
