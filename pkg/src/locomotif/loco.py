"""Local warping paths in a self-similarity matrix.

The cumulative matrix ``D`` holds, for every position, the best gap-penalized
aggregated similarity of any local warping path ending there. Paths are then
extracted greedily from ``D`` in decreasing order, masking a cross-shaped
vicinity around every accepted path so that later paths stay separated.

Positions returned to callers are 1-based ``(row, col)`` pairs; the numba
kernels work on 0-based indices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from numba.typed import List

from .core import Segment, znormalize
from .ssm import compute_ssm, quantile_threshold

# (row delta, col delta); the order doubles as the backtracking tie-break.
WARPING_STEPS = np.array([(1, 1), (2, 1), (1, 2)], dtype=np.int64)
DIAGONAL_STEPS = np.array([(1, 1)], dtype=np.int64)


def step_set(warping: bool = True) -> np.ndarray:
    return WARPING_STEPS if warping else DIAGONAL_STEPS


@dataclass(frozen=True)
class GapPenaltyParams:
    """Similarity threshold and gap penalties of the path recurrence."""

    tau: float
    delta_a: float
    delta_m: float = 0.5

    def __post_init__(self):
        if self.delta_a < 0:
            raise ValueError("delta_a must be non-negative")
        if not 0.0 <= self.delta_m <= 1.0:
            raise ValueError("delta_m must lie in [0, 1]")

    @classmethod
    def from_tau(cls, tau: float) -> "GapPenaltyParams":
        return cls(tau=float(tau), delta_a=2.0 * float(tau), delta_m=0.5)

    @classmethod
    def from_ssm(cls, S: np.ndarray, rho: float = 0.8) -> "GapPenaltyParams":
        return cls.from_tau(quantile_threshold(S, rho))


@njit(cache=True)
def _cumulative_kernel(S, tau, delta_a, delta_m, steps):
    n = S.shape[0]
    m = S.shape[1]
    D = np.zeros((n, m))
    n_steps = steps.shape[0]
    for i in range(n):
        for j in range(m):
            prev = 0.0
            for s in range(n_steps):
                pi = i - steps[s, 0]
                pj = j - steps[s, 1]
                if pi >= 0 and pj >= 0 and D[pi, pj] > prev:
                    prev = D[pi, pj]
            sim = S[i, j]
            if sim >= tau:
                D[i, j] = prev + sim
            else:
                v = delta_m * prev - delta_a
                D[i, j] = v if v > 0.0 else 0.0
    return D


def compute_cumulative(S: np.ndarray, params: GapPenaltyParams,
                       steps: np.ndarray = WARPING_STEPS) -> np.ndarray:
    """Cumulative similarity matrix ``D`` for the gap-penalized recurrence.

    ``D[i, j] = f_ij(max D over admissible predecessors)`` with an empty max
    counting as 0, where ``f_ij`` adds ``S[i, j]`` when it reaches ``tau`` and
    otherwise shrinks the running value to ``max(0, delta_m * v - delta_a)``.
    """
    S = np.ascontiguousarray(S, dtype=float)
    return _cumulative_kernel(S, float(params.tau), float(params.delta_a),
                              float(params.delta_m), np.asarray(steps, dtype=np.int64))


@njit(cache=True)
def _backtrack_kernel(D, i, j, mask, steps, buf):
    # Fills buf from the back; returns the index of the first written row.
    k = buf.shape[0]
    n_steps = steps.shape[0]
    while not mask[i, j] and D[i, j] != 0.0:
        k -= 1
        buf[k, 0] = i
        buf[k, 1] = j
        best = -1.0
        bi = -1
        bj = -1
        for s in range(n_steps):
            pi = i - steps[s, 0]
            pj = j - steps[s, 1]
            if pi >= 0 and pj >= 0 and D[pi, pj] > best:
                best = D[pi, pj]
                bi = pi
                bj = pj
        if bi < 0:
            break
        i = bi
        j = bj
    return k


@njit(cache=True)
def _mask_vicinity(mask, path, half):
    n = mask.shape[0]
    m = mask.shape[1]
    for k in range(path.shape[0]):
        i = path[k, 0]
        j = path[k, 1]
        for ii in range(max(0, i - half), min(n, i + half + 1)):
            mask[ii, j] = True
        for jj in range(max(0, j - half), min(m, j + half + 1)):
            mask[i, jj] = True


@njit(cache=True)
def _extract_kernel(D, order, steps, l_min, mask):
    n = D.shape[0]
    m = D.shape[1]
    half = l_min // 2
    buf = np.empty((min(n, m), 2), dtype=np.int64)
    paths = List()
    for t in range(order.shape[0]):
        idx = order[t]
        i = idx // m
        j = idx % m
        if mask[i, j]:
            continue
        k = _backtrack_kernel(D, i, j, mask, steps, buf)
        p = buf[k:].copy()
        len_rows = p[-1, 0] - p[0, 0] + 1
        len_cols = p[-1, 1] - p[0, 1] + 1
        if len_rows >= l_min or len_cols >= l_min:
            _mask_vicinity(mask, p, half)
            paths.append(p)
            on_diagonal = True
            for r in range(p.shape[0]):
                if p[r, 0] != p[r, 1]:
                    on_diagonal = False
                    break
            if not on_diagonal:
                q = np.empty_like(p)
                q[:, 0] = p[:, 1]
                q[:, 1] = p[:, 0]
                _mask_vicinity(mask, q, half)
                paths.append(q)
        else:
            for r in range(p.shape[0]):
                mask[p[r, 0], p[r, 1]] = True
    return paths


def backtrack(D: np.ndarray, start, mask: np.ndarray | None = None,
              steps: np.ndarray = WARPING_STEPS) -> np.ndarray:
    """Trace the path ending at `start` back through ``D``.

    At each position the admissible predecessor with the largest ``D`` value
    is taken (ties prefer the steps in the order given by `steps`). Tracing
    stops at a zero entry, a masked position, or the matrix border.

    Parameters
    ----------
    D : np.ndarray, shape (n, n)
    start : tuple of int
        1-based ``(row, col)`` position.
    mask : np.ndarray of bool, optional
    steps : np.ndarray

    Returns
    -------
    np.ndarray, shape (l, 2)
        1-based positions in forward order; empty when `start` is masked or
        has ``D == 0``.
    """
    D = np.ascontiguousarray(D, dtype=float)
    if mask is None:
        mask = np.zeros(D.shape, dtype=bool)
    i, j = int(start[0]) - 1, int(start[1]) - 1
    buf = np.empty((min(D.shape), 2), dtype=np.int64)
    k = _backtrack_kernel(D, i, j, mask, np.asarray(steps, dtype=np.int64), buf)
    return buf[k:] + 1


def vicinity(path, l_min: int, n: int) -> set[tuple[int, int]]:
    """Positions masked around `path`: crosses of half-width ``l_min // 2``.

    Returned as a set of 1-based positions clipped to ``[1:n]^2``.
    """
    path = np.asarray(path, dtype=np.int64) - 1
    mask = np.zeros((n, n), dtype=bool)
    _mask_vicinity(mask, path, l_min // 2)
    rows, cols = np.nonzero(mask)
    return {(int(r) + 1, int(c) + 1) for r, c in zip(rows, cols)}


class WarpingPath:
    """A local warping path together with its two column lookup tables.

    Parameters
    ----------
    positions : array_like, shape (l, 2)
        1-based ``(row, col)`` positions.
    S : np.ndarray
        Self-similarity matrix the path lives in.

    Attributes
    ----------
    first_col_index : np.ndarray
        Entry ``j - j_1`` is the 0-based index of the first position whose
        column is ``>= j``.
    cum_score : np.ndarray
        Entry ``j - j_1`` is the summed similarity from the first position up
        to and including ``positions[first_col_index[j - j_1]]``.
    """

    def __init__(self, positions, S: np.ndarray):
        pos = np.asarray(positions, dtype=np.int64).reshape(-1, 2)
        if len(pos) == 0:
            raise ValueError("a warping path needs at least one position")
        self.positions = pos
        cols = pos[:, 1]
        self.first_col_index = np.searchsorted(cols, np.arange(cols[0], cols[-1] + 1),
                                               side="left")
        self.similarities = S[pos[:, 0] - 1, pos[:, 1] - 1]
        self.cum_score = np.cumsum(self.similarities)[self.first_col_index]

    def __len__(self) -> int:
        return len(self.positions)

    def __repr__(self) -> str:
        return f"WarpingPath(rows={tuple(self.row_segment)}, cols={tuple(self.col_segment)}, l={len(self)})"

    @property
    def row_segment(self) -> Segment:
        return Segment(int(self.positions[0, 0]), int(self.positions[-1, 0]))

    @property
    def col_segment(self) -> Segment:
        return Segment(int(self.positions[0, 1]), int(self.positions[-1, 1]))

    def covers_columns(self, b: int, e: int) -> bool:
        seg = self.col_segment
        return seg.b <= b and e <= seg.e

    def k(self, j: int) -> int:
        """0-based index of the first position with column ``>= j``."""
        return int(self.first_col_index[j - self.positions[0, 1]])

    def fragment(self, b: int, e: int) -> np.ndarray:
        """Positions from the first column ``>= b`` through the first column ``>= e``."""
        return self.positions[self.k(b):self.k(e) + 1]

    def fragment_score(self, b: int, e: int) -> float:
        """Summed similarity over :meth:`fragment` using the lookup tables."""
        j1 = self.positions[0, 1]
        return float(self.cum_score[e - j1] - self.cum_score[b - j1]
                     + self.similarities[self.k(b)])

    def mirrored(self, S: np.ndarray) -> "WarpingPath":
        return WarpingPath(self.positions[:, ::-1], S)


def extraction_order(D: np.ndarray) -> np.ndarray:
    """Flat indices of positive ``D`` entries, largest first.

    Ties keep row-major order (smallest row, then smallest column).
    """
    flat = D.ravel()
    candidates = np.flatnonzero(flat > 0)
    return candidates[np.argsort(-flat[candidates], kind="stable")]


def extract_paths(S: np.ndarray, l_min: int, params: GapPenaltyParams,
         steps: np.ndarray = WARPING_STEPS, D: np.ndarray | None = None) -> list[WarpingPath]:
    """Extract separated local warping paths from an SSM.

    Every accepted path is followed in the result by its transpose, so each
    relation is available with either segment on the column axis. The
    main diagonal is its own transpose and appears once.
    """
    if l_min < 1:
        raise ValueError("l_min must be positive")
    S = np.ascontiguousarray(S, dtype=float)
    steps = np.asarray(steps, dtype=np.int64)
    if D is None:
        D = compute_cumulative(S, params, steps)
    mask = np.zeros(D.shape, dtype=bool)
    raw = _extract_kernel(D, extraction_order(D), steps, int(l_min), mask)
    return [WarpingPath(p + 1, S) for p in raw]


def find_paths(x, l_min: int, rho: float = 0.8, steps: np.ndarray = WARPING_STEPS) -> list[WarpingPath]:
    """Z-normalize `x`, build its SSM and return the extracted warping paths."""
    S = compute_ssm(znormalize(x))
    if l_min > S.shape[0]:
        raise ValueError(f"l_min={l_min} exceeds the series length {S.shape[0]}")
    return extract_paths(S, l_min, GapPenaltyParams.from_ssm(S, rho), steps)
