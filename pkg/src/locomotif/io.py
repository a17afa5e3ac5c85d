"""CSV/JSON file formats.

Files use 0-based half-open ``[start, end)`` intervals; in memory segments are
1-based inclusive. Both conventions share the same end value, so
``[start, end) <-> Segment(start + 1, end)``.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import Segment
from .evaluation import GroundTruth


class FormatError(ValueError):
    pass


def to_interval(seg: Segment) -> list[int]:
    return [int(seg.b) - 1, int(seg.e)]


def from_interval(iv, n: int | None = None) -> Segment:
    try:
        start, end = (int(v) for v in iv)
    except (TypeError, ValueError):
        raise FormatError(f"malformed interval {iv!r}") from None
    if start < 0 or end <= start or (n is not None and end > n):
        raise FormatError(f"invalid interval [{start}, {end}) for n={n}")
    return Segment(start + 1, end)


def read_series(path) -> np.ndarray:
    """Read a rectangular numeric CSV (one row per time step) as an ``(n, d)`` array.

    A single non-numeric header row is skipped.
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if not rows:
        raise FormatError(f"{path} is empty")

    def numeric(row):
        try:
            return [float(c) for c in row]
        except ValueError:
            return None

    if numeric(rows[0]) is None:
        rows = rows[1:]
    width = len(rows[0]) if rows else 0
    data = []
    for lineno, row in enumerate(rows, 1):
        vals = numeric(row)
        if vals is None:
            raise FormatError(f"{path}: non-numeric value in data row {lineno}")
        if len(vals) != width:
            raise FormatError(f"{path}: row {lineno} has {len(vals)} columns, expected {width}")
        data.append(vals)
    if not data or width == 0:
        raise FormatError(f"{path} has no data rows")
    arr = np.array(data, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{path} contains non-finite values")
    return arr


def write_series(path, x) -> None:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    np.savetxt(path, x, delimiter=",", fmt="%.17g")


def read_mask(path, n: int) -> np.ndarray:
    arr = read_series(path)
    if arr.shape[1] != 1 or arr.shape[0] != n:
        raise FormatError(f"{path}: mask must be a single column of length {n}, got shape {arr.shape}")
    if not np.all((arr == 0) | (arr == 1)):
        raise FormatError(f"{path}: mask values must be 0 or 1")
    return arr[:, 0].astype(bool)


def motif_sets_to_json(n: int, motif_sets) -> dict:
    return {
        "n": int(n),
        "motif_sets": [
            {
                "representative": to_interval(ms.alpha),
                "members": [to_interval(s) for s in ms.members],
                "fitness": float(ms.fitness),
            }
            for ms in motif_sets
        ],
    }


def load_motif_sets(doc: dict) -> tuple[int, list[Segment], list[list[Segment]]]:
    """Parse a motif-sets document into ``(n, representatives, member lists)``."""
    try:
        n = int(doc["n"])
        entries = doc["motif_sets"]
        reps = [from_interval(e["representative"], n) for e in entries]
        members = [[from_interval(iv, n) for iv in e["members"]] for e in entries]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed motif-sets document: {exc}") from None
    for rep, ms in zip(reps, members):
        if rep not in ms:
            raise FormatError(f"representative {to_interval(rep)} is not among its members")
    return n, reps, members


def ground_truth_to_json(n: int, gt: GroundTruth) -> dict:
    return {"n": int(n), "gt_motif_sets": [[to_interval(s) for s in ms] for ms in gt.motif_sets]}


def load_ground_truth(doc: dict) -> tuple[int, GroundTruth]:
    try:
        n = int(doc["n"])
        sets = [[from_interval(iv, n) for iv in ms] for ms in doc["gt_motif_sets"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed ground-truth document: {exc}") from None
    try:
        return n, GroundTruth(sets)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None


def write_json(path, doc: dict) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def segments_equal(a: Sequence[Segment], b: Sequence[Segment]) -> bool:
    return [tuple(s) for s in a] == [tuple(s) for s in b]
