"""Segments, interval arithmetic and z-normalization.

Time indices are 1-based and segments are inclusive on both ends, so
``Segment(3, 7)`` covers samples 3, 4, 5, 6 and 7. Conversion to 0-based
half-open intervals only happens at the file boundary (:mod:`locomotif.io`).
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np


class Segment(NamedTuple):
    """Inclusive interval ``[b:e]`` of 1-based time indices."""

    b: int
    e: int

    def __len__(self) -> int:
        return self.e - self.b + 1

    def slice(self) -> slice:
        """Python slice selecting the segment's samples from a 0-based array."""
        return slice(self.b - 1, self.e)

    def is_valid(self, n: int | None = None) -> bool:
        if n is None:
            return 1 <= self.b <= self.e
        return 1 <= self.b <= self.e <= n


def as_series(x) -> np.ndarray:
    """Return `x` as a float array of shape ``(n, d)``.

    A 1-D input is treated as a univariate series.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
        raise ValueError(f"expected a non-empty (n, d) array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("time series contains non-finite values")
    return x


def znormalize(x) -> np.ndarray:
    """Z-normalize every dimension of a series independently.

    Uses the population standard deviation. Dimensions with zero variance
    become all zeros instead of raising.

    Parameters
    ----------
    x : array_like, shape (n,) or (n, d)

    Returns
    -------
    np.ndarray
        Array of the same shape as the input.
    """
    arr = np.asarray(x, dtype=float)
    squeeze = arr.ndim == 1
    ts = as_series(arr)
    mean = ts.mean(axis=0)
    std = ts.std(axis=0)
    out = np.zeros_like(ts)
    # exact constancy test; std of identical values can round to a tiny nonzero
    ok = (np.ptp(ts, axis=0) > 0) & (std > 0)
    out[:, ok] = (ts[:, ok] - mean[ok]) / std[ok]
    return out[:, 0] if squeeze else out


def seg_intersection_len(a: Segment, b: Segment) -> int:
    return max(0, min(a.e, b.e) - max(a.b, b.b) + 1)


def is_coincident(a: Segment, b: Segment, nu: float) -> bool:
    """True if `a` overlaps `b` by more than ``nu * len(b)``.

    Not symmetric: `b` is the reference segment.
    """
    return seg_intersection_len(a, b) > nu * len(b)
