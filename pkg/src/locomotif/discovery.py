"""Motif-set discovery on top of the extracted local warping paths.

For a candidate representative ``alpha = [b:e]`` every path whose column
projection covers ``alpha`` contributes the fragment between its first
columns ``>= b`` and ``>= e``; the row projections of those fragments form the
candidate motif set. Candidates are ranked by the harmonic mean of a
normalized similarity score and a normalized coverage, both measured after
removing the trivial self-match on the main diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numba import njit

from .core import Segment, as_series, is_coincident, seg_intersection_len, znormalize
from .loco import (
    GapPenaltyParams,
    WarpingPath,
    compute_cumulative,
    extract_paths,
    step_set,
)
from .ssm import compute_ssm


@dataclass(frozen=True)
class DiscoveryConfig:
    """Hyperparameters of a discovery run.

    `start_mask` / `end_mask`, when given, are boolean sequences of length
    ``n`` marking the time indices (position ``t - 1`` for index ``t``) at
    which a representative segment may start / end.
    """

    l_min: int
    l_max: int
    rho: float = 0.8
    kappa: int | None = None
    nu: float = 0.5
    warping: bool = True
    start_mask: Sequence[bool] | None = field(default=None, repr=False)
    end_mask: Sequence[bool] | None = field(default=None, repr=False)

    def validate(self, n: int) -> None:
        if self.l_min < 1:
            raise ValueError(f"l_min must be positive, got {self.l_min}")
        if self.l_min > self.l_max:
            raise ValueError(f"l_min={self.l_min} exceeds l_max={self.l_max}")
        if self.l_min > n:
            raise ValueError(f"l_min={self.l_min} exceeds the series length n={n}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if not 0.0 <= self.nu <= 0.5:
            raise ValueError(f"nu must lie in [0, 0.5], got {self.nu}")
        if self.kappa is not None and self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        for name in ("start_mask", "end_mask"):
            m = getattr(self, name)
            if m is not None and len(m) != n:
                raise ValueError(f"{name} has length {len(m)}, expected {n}")


@dataclass(frozen=True)
class CandidateMotifSet:
    alpha: Segment
    members: tuple[Segment, ...]
    subpaths: tuple[np.ndarray, ...] = field(repr=False)
    fitness: float
    score: float
    coverage: float


@dataclass
class DiscoveryResult:
    motif_sets: list[CandidateMotifSet]
    paths: list[WarpingPath] = field(default_factory=list, repr=False)
    tau: float = float("nan")

    def __len__(self) -> int:
        return len(self.motif_sets)

    def __iter__(self):
        return iter(self.motif_sets)

    def segments(self) -> list[list[Segment]]:
        return [list(ms.members) for ms in self.motif_sets]


def candidate_subpaths(paths: Sequence[WarpingPath], alpha: Segment) -> list[np.ndarray]:
    """Fragments of `paths` whose column projection corresponds to `alpha`.

    Paths that do not cover both ends of `alpha` on the column axis are
    skipped. Each fragment runs from the first position with column ``>= b``
    to the first position with column ``>= e``.
    """
    b, e = alpha
    return [p.fragment(b, e) for p in paths if p.covers_columns(b, e)]


def coverage(members: Sequence[Segment]) -> int:
    """Total member length minus the pairwise overlaps."""
    total = sum(len(m) for m in members)
    ms = sorted(members)
    for a in range(len(ms)):
        for c in range(a + 1, len(ms)):
            if ms[c].b > ms[a].e:
                break
            total -= seg_intersection_len(ms[a], ms[c])
    return total


def fitness(alpha: Segment, subpaths: Sequence[np.ndarray], S: np.ndarray,
            n: int | None = None) -> tuple[float, float, float]:
    """Fitness of the candidate motif set given by `subpaths`.

    Parameters
    ----------
    alpha : Segment
    subpaths : sequence of np.ndarray
        1-based fragments, including the self-match of `alpha`.
    S : np.ndarray
    n : int, optional
        Series length; defaults to ``S.shape[0]``.

    Returns
    -------
    (phi, score, coverage) : tuple of float
        Harmonic mean and the two normalized components.
    """
    n = S.shape[0] if n is None else n
    if not subpaths:
        return 0.0, 0.0, 0.0
    score = sum(float(S[q[:, 0] - 1, q[:, 1] - 1].sum()) for q in subpaths)
    total_len = sum(len(q) for q in subpaths)
    members = [Segment(int(q[0, 0]), int(q[-1, 0])) for q in subpaths]
    score_n = (score - len(alpha)) / total_len
    cover_n = (coverage(members) - len(alpha)) / n
    if score_n + cover_n == 0:
        return 0.0, score_n, cover_n
    return 2 * score_n * cover_n / (score_n + cover_n), score_n, cover_n


class PackedPaths:
    """Flat, 0-based array view of a path list for the sweep kernel."""

    def __init__(self, paths: Sequence[WarpingPath]):
        self.paths = list(paths)
        lens = np.array([len(p) for p in self.paths], dtype=np.int64)
        self.offsets = np.zeros(len(lens) + 1, dtype=np.int64)
        np.cumsum(lens, out=self.offsets[1:])
        if self.paths:
            pos = np.concatenate([p.positions for p in self.paths]) - 1
            self.rows = np.ascontiguousarray(pos[:, 0])
            self.sims = np.concatenate([p.similarities for p in self.paths])
            self.kp = np.concatenate([p.first_col_index for p in self.paths]).astype(np.int64)
            self.cum = np.concatenate([p.cum_score for p in self.paths])
        else:
            self.rows = np.zeros(0, dtype=np.int64)
            self.sims = np.zeros(0)
            self.kp = np.zeros(0, dtype=np.int64)
            self.cum = np.zeros(0)
        self.col_start = np.array([p.positions[0, 1] - 1 for p in self.paths], dtype=np.int64)
        self.col_end = np.array([p.positions[-1, 1] - 1 for p in self.paths], dtype=np.int64)
        tab_lens = self.col_end - self.col_start + 1
        self.tab_offsets = np.zeros(len(self.paths) + 1, dtype=np.int64)
        np.cumsum(tab_lens, out=self.tab_offsets[1:])
        self.by_start = np.argsort(self.col_start, kind="stable").astype(np.int64)


@njit(cache=True)
def _coincident(b1, e1, b2, e2, nu):
    inter = min(e1, e2) - max(b1, b2) + 1
    if inter < 0:
        inter = 0
    return inter > nu * (e2 - b2 + 1)


@njit(cache=True)
def _sweep_kernel(rows, sims, offsets, col_start, col_end, tab_offsets, kp, cum, by_start,
                  n, l_min, l_max, nu, emit_b, emit_e, start_ok, end_ok):
    n_paths = col_start.shape[0]
    n_emit = emit_b.shape[0]
    best_b = -1
    best_e = -1
    best_phi = 0.0

    active = np.empty(n_paths, dtype=np.int64)
    n_active = 0
    nxt = 0
    kb = np.empty(n_paths, dtype=np.int64)
    start_row = np.empty(n_paths, dtype=np.int64)
    mem_b = np.empty(n_paths, dtype=np.int64)
    mem_e = np.empty(n_paths, dtype=np.int64)

    for b in range(0, n - l_min + 1):
        # paths whose column projection contains b
        w = 0
        for t in range(n_active):
            p = active[t]
            if col_end[p] >= b:
                active[w] = p
                w += 1
        n_active = w
        while nxt < n_paths and col_start[by_start[nxt]] <= b:
            p = by_start[nxt]
            if col_end[p] >= b:
                active[n_active] = p
                n_active += 1
            nxt += 1
        if not start_ok[b] or n_active == 0:
            continue

        for t in range(n_active):
            p = active[t]
            kb[t] = kp[tab_offsets[p] + b - col_start[p]]
            start_row[t] = rows[offsets[p] + kb[t]]
        order = np.argsort(start_row[:n_active], kind="mergesort")

        e_hi = min(b + l_max - 1, n - 1)
        for e in range(b + l_min - 1, e_hi + 1):
            skip = False
            for u in range(n_emit):
                if _coincident(b, e, emit_b[u], emit_e[u], nu):
                    skip = True
                    break
            if skip:
                break
            if not end_ok[e]:
                continue

            n_mem = 0
            score = 0.0
            total_len = 0
            rejected = False
            for oi in range(n_active):
                t = order[oi]
                p = active[t]
                if col_end[p] < e:
                    continue
                ke = kp[tab_offsets[p] + e - col_start[p]]
                mb = start_row[t]
                me = rows[offsets[p] + ke]
                discard = False
                for u in range(n_emit):
                    if _coincident(mb, me, emit_b[u], emit_e[u], nu):
                        discard = True
                        break
                if discard:
                    continue
                if n_mem > 0:
                    pb = mem_b[n_mem - 1]
                    pe = mem_e[n_mem - 1]
                    if _coincident(pb, pe, mb, me, nu) or _coincident(mb, me, pb, pe, nu):
                        rejected = True
                        break
                mem_b[n_mem] = mb
                mem_e[n_mem] = me
                n_mem += 1
                toff = tab_offsets[p] - col_start[p]
                score += cum[toff + e] - cum[toff + b] + sims[offsets[p] + kb[t]]
                total_len += ke - kb[t] + 1
            if rejected or n_mem == 0:
                continue

            cov = 0
            for a in range(n_mem):
                cov += mem_e[a] - mem_b[a] + 1
            for a in range(n_mem):
                for c in range(a + 1, n_mem):
                    if mem_b[c] > mem_e[a]:
                        break
                    cov -= min(mem_e[a], mem_e[c]) - mem_b[c] + 1

            length = e - b + 1
            score_n = (score - length) / total_len
            cover_n = (cov - length) / n
            denom = score_n + cover_n
            phi = 0.0
            if denom != 0.0:
                phi = 2.0 * score_n * cover_n / denom
            if phi > best_phi:
                best_phi = phi
                best_b = b
                best_e = e
    return best_b, best_e, best_phi


def _mask_array(mask, n: int) -> np.ndarray:
    if mask is None:
        return np.ones(n, dtype=np.bool_)
    return np.asarray(mask, dtype=np.bool_)


def assemble_candidate(alpha: Segment, paths: Sequence[WarpingPath], S: np.ndarray,
                       nu: float = 0.5, emitted: Sequence[Segment] = ()) -> CandidateMotifSet | None:
    """Build the candidate motif set of `alpha`, applying the overlap filters.

    Members coincident to an `emitted` segment are dropped together with
    their fragment. Returns None when two remaining members are coincident.
    """
    frags = []
    for q in candidate_subpaths(paths, alpha):
        beta = Segment(int(q[0, 0]), int(q[-1, 0]))
        if not any(is_coincident(beta, g, nu) for g in emitted):
            frags.append((beta, q))
    frags.sort(key=lambda bq: bq[0].b)
    members = [beta for beta, _ in frags]
    for a in range(len(members) - 1):
        x, y = members[a], members[a + 1]
        if is_coincident(x, y, nu) or is_coincident(y, x, nu):
            return None
    subpaths = tuple(q for _, q in frags)
    phi, score_n, cover_n = fitness(alpha, subpaths, S)
    return CandidateMotifSet(alpha, tuple(members), subpaths, phi, score_n, cover_n)


def best_motif_set(paths: Sequence[WarpingPath] | PackedPaths, S: np.ndarray,
                   config: DiscoveryConfig,
                   emitted: Sequence[Segment] = ()) -> CandidateMotifSet | None:
    """Highest-fitness candidate motif set that survives the overlap filters.

    Sweeps every start ``b`` and end ``e`` with ``l_min <= e - b + 1 <= l_max``,
    keeping the set of covering paths up to date incrementally. Exact fitness
    ties keep the earliest candidate (smallest ``b``, then ``e``).

    Returns None when no candidate has positive fitness.
    """
    packed = paths if isinstance(paths, PackedPaths) else PackedPaths(paths)
    n = S.shape[0]
    em = list(emitted)
    emit_b = np.array([g.b - 1 for g in em], dtype=np.int64)
    emit_e = np.array([g.e - 1 for g in em], dtype=np.int64)
    b0, e0, phi = _sweep_kernel(
        packed.rows, packed.sims, packed.offsets, packed.col_start, packed.col_end,
        packed.tab_offsets, packed.kp, packed.cum, packed.by_start,
        n, int(config.l_min), int(config.l_max), float(config.nu), emit_b, emit_e,
        _mask_array(config.start_mask, n), _mask_array(config.end_mask, n))
    if b0 < 0:
        return None
    alpha = Segment(int(b0) + 1, int(e0) + 1)
    return assemble_candidate(alpha, packed.paths, S, config.nu, em)


def locomotif(x, config: DiscoveryConfig | None = None, **params) -> DiscoveryResult:
    """Discover motif sets in a (multivariate) time series.

    Parameters
    ----------
    x : array_like, shape (n,) or (n, d)
    config : DiscoveryConfig, optional
        Alternatively pass its fields as keyword arguments.

    Returns
    -------
    DiscoveryResult
        Motif sets in discovery order.
    """
    if config is None:
        config = DiscoveryConfig(**params)
    elif params:
        raise TypeError("pass either a DiscoveryConfig or keyword parameters, not both")
    ts = as_series(x)
    n = ts.shape[0]
    config.validate(n)
    if config.kappa == 0:
        return DiscoveryResult([])

    S = compute_ssm(znormalize(ts))
    gap = GapPenaltyParams.from_ssm(S, config.rho)
    steps = step_set(config.warping)
    D = compute_cumulative(S, gap, steps)
    paths = extract_paths(S, config.l_min, gap, steps, D=D)
    del D
    packed = PackedPaths(paths)

    found: list[CandidateMotifSet] = []
    emitted: list[Segment] = []
    while config.kappa is None or len(found) < config.kappa:
        best = best_motif_set(packed, S, config, emitted)
        if best is None:
            break
        found.append(best)
        emitted.extend(best.members)
    return DiscoveryResult(found, paths, gap.tau)


def guidance_mask_from_rest(x, l_max: int, var_threshold: float,
                            fraction: float = 0.33) -> tuple[np.ndarray, np.ndarray]:
    """Allowed start/end indices derived from idle (resting) stretches.

    A sample is idle when it lies in some length-`l_max` window whose
    variance stays below `var_threshold` in every dimension. Among the
    non-idle samples, the `fraction` closest (Euclidean) to the mean of all
    idle samples are allowed as segment boundaries.

    Returns
    -------
    (start_mask, end_mask) : tuple of np.ndarray of bool
        Identical masks. All indices are allowed when no window is idle, or
        when every sample is idle.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    ts = as_series(x)
    n = ts.shape[0]
    w = min(int(l_max), n)
    allowed = np.ones(n, dtype=bool)
    windows = np.lib.stride_tricks.sliding_window_view(ts, w, axis=0)
    quiet = np.all(windows.var(axis=-1) < var_threshold, axis=1)
    if not quiet.any():
        return allowed, allowed.copy()
    # union of the quiet windows via a difference array
    cover = np.zeros(n + 1, dtype=np.int64)
    starts = np.flatnonzero(quiet)
    np.add.at(cover, starts, 1)
    np.add.at(cover, starts + w, -1)
    idle = np.cumsum(cover[:n]) > 0
    active = np.flatnonzero(~idle)
    if active.size == 0:
        return allowed, allowed.copy()
    rest = ts[idle].mean(axis=0)
    dist = np.linalg.norm(ts[active] - rest, axis=1)
    keep = int(np.ceil(fraction * active.size))
    chosen = active[np.argsort(dist, kind="stable")[:keep]]
    allowed[:] = False
    allowed[chosen] = True
    return allowed, allowed.copy()
