"""Self-similarity matrix and the quantile-based similarity threshold."""
from __future__ import annotations

import numpy as np

from .core import as_series


def compute_ssm(x) -> np.ndarray:
    """Self-similarity matrix ``S[i, j] = exp(-||x_i - x_j||^2)``.

    The input is expected to be z-normalized already. Squared distances are
    accumulated from explicit differences (no Gram-matrix shortcut) so the
    result is exactly symmetric with an exact unit diagonal.

    Parameters
    ----------
    x : array_like, shape (n,) or (n, d)

    Returns
    -------
    np.ndarray, shape (n, n)
        C-contiguous float64 matrix with entries in ``[0, 1]``.
    """
    ts = as_series(x)
    n, d = ts.shape
    sq = np.zeros((n, n))
    for k in range(d):
        col = ts[:, k]
        diff = col[:, None] - col[None, :]
        sq += diff * diff
    np.negative(sq, out=sq)
    np.exp(sq, out=sq)
    return sq


def quantile_threshold(S: np.ndarray, rho: float) -> float:
    """Linearly interpolated `rho`-quantile over all ``n*n`` entries of `S`."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    return float(np.quantile(S, rho, method="linear"))
