"""Benchmark series assembled from labeled time-series instances.

A generated series alternates instances of the repeated classes with single
instances of classes that never repeat, e.g. ``A C B D A E B``, so that
every pair of repeated instances is separated and the motif sets are
unambiguous. The repeated classes become the ground-truth motif sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .core import Segment, as_series, znormalize
from .evaluation import GroundTruth


def kappa_max(c: int, occurrences: int = 2) -> int:
    """Largest number of ground-truth motif sets a `c`-class pool supports.

    With `occurrences` instances per repeated class, ``k`` sets need ``k``
    repeated classes plus ``occurrences * k - 1`` separator classes. For the
    default of two occurrences this is ``(c + 1) // 3``.
    """
    if c < 5:
        raise ValueError(f"at least 5 classes are needed for two motif sets, got {c}")
    if occurrences < 2:
        raise ValueError("occurrences must be at least 2")
    return (c + 1) // (occurrences + 1)


class LabeledInstancePool:
    """Instances grouped by class label, each z-normalized on construction."""

    def __init__(self, classes: Mapping[str, Sequence]):
        self.classes: dict[str, list[np.ndarray]] = {}
        d = None
        for label in sorted(classes):
            insts = [znormalize(as_series(x)) for x in classes[label]]
            if not insts:
                raise ValueError(f"class {label!r} has no instances")
            for x in insts:
                if d is None:
                    d = x.shape[1]
                elif x.shape[1] != d:
                    raise ValueError("all instances must share the same dimensionality")
            self.classes[str(label)] = insts
        self.d = d

    @property
    def c(self) -> int:
        return len(self.classes)

    @property
    def labels(self) -> list[str]:
        return list(self.classes)

    @classmethod
    def from_directory(cls, root) -> "LabeledInstancePool":
        """Read ``root/<label>/*.csv``; every CSV holds one instance."""
        from .io import read_series

        root = Path(root)
        if not root.is_dir():
            raise ValueError(f"{root} is not a directory")
        classes = {}
        for sub in sorted(p for p in root.iterdir() if p.is_dir()):
            files = sorted(sub.glob("*.csv"))
            if files:
                classes[sub.name] = [read_series(f) for f in files]
        return cls(classes)

    def subset(self, picks: Mapping[str, Sequence[int]]) -> "LabeledInstancePool":
        sub = object.__new__(LabeledInstancePool)
        sub.classes = {lab: [self.classes[lab][i] for i in idx] for lab, idx in picks.items() if len(idx)}
        sub.d = self.d
        return sub


@dataclass
class GeneratedBenchmark:
    series: np.ndarray
    ground_truth: GroundTruth
    provenance: list[tuple[str, int, Segment]]
    repeated: list[str] = field(default_factory=list)
    subset: str = "evaluation"

    @property
    def kappa(self) -> int:
        return len(self.ground_truth)


def _feasible_kappa(pool: LabeledInstancePool, occurrences: int, repeated_from: Sequence[str]) -> int:
    eligible = sum(len(pool.classes[lab]) >= occurrences for lab in repeated_from)
    best = 0
    for k in range(2, pool.c + 1):
        if k > eligible or k + occurrences * k - 1 > pool.c:
            break
        best = k
    return best


def generate_one(pool: LabeledInstancePool, occurrences: int = 2, seed=None,
                 repeated_from: Sequence[str] | None = None) -> GeneratedBenchmark:
    """Generate one benchmark series with its ground truth.

    Parameters
    ----------
    pool : LabeledInstancePool
    occurrences : int
        Instances per repeated class (distinct instances, no reuse).
    seed : int or np.random.Generator, optional
    repeated_from : sequence of str, optional
        Restrict the classes that may repeat; the others only serve as
        separators. Defaults to all classes.
    """
    kappa_max(pool.c, occurrences)
    rng = np.random.default_rng(seed)
    cand = list(pool.labels if repeated_from is None else repeated_from)
    unknown = set(cand) - set(pool.labels)
    if unknown:
        raise ValueError(f"unknown classes {sorted(unknown)}")
    upper = _feasible_kappa(pool, occurrences, cand)
    if upper < 2:
        raise ValueError("pool cannot hold two motif sets: too few classes or instances per class")

    k = int(rng.integers(2, upper + 1))
    eligible = [lab for lab in cand if len(pool.classes[lab]) >= occurrences]
    repeated = [eligible[i] for i in sorted(rng.choice(len(eligible), size=k, replace=False))]
    others = [lab for lab in pool.labels if lab not in repeated]
    n_sep = occurrences * k - 1
    separators = [others[i] for i in rng.choice(len(others), size=n_sep, replace=False)]

    reps = []
    for lab in repeated:
        ids = rng.choice(len(pool.classes[lab]), size=occurrences, replace=False)
        reps.extend((lab, int(i)) for i in ids)
    reps = [reps[i] for i in rng.permutation(len(reps))]

    pieces = []
    for t, item in enumerate(reps):
        pieces.append(item)
        if t < len(separators):
            lab = separators[t]
            pieces.append((lab, int(rng.integers(len(pool.classes[lab])))))

    chunks, provenance, pos = [], [], 1
    gt = {lab: [] for lab in repeated}
    for lab, idx in pieces:
        inst = pool.classes[lab][idx]
        seg = Segment(pos, pos + len(inst) - 1)
        chunks.append(inst)
        provenance.append((lab, idx, seg))
        if lab in gt:
            gt[lab].append(seg)
        pos = seg.e + 1
    series = np.concatenate(chunks, axis=0)
    return GeneratedBenchmark(series, GroundTruth([gt[lab] for lab in repeated]),
                              provenance, repeated)


def generate_suite(pool: LabeledInstancePool, N: int, split: float = 0.0, seed=None,
                   occurrences: int = 2, repeated_from: Sequence[str] | None = None) -> list[GeneratedBenchmark]:
    """Generate `N` benchmarks, optionally from disjoint validation/evaluation pools.

    With ``split > 0`` each class's instances are shuffled and a `split`
    fraction goes to a validation pool; ``round(split * N)`` series come from
    it and the rest from the remaining instances. Validation series are
    listed first.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if not 0.0 <= split < 1.0:
        raise ValueError("split must lie in [0, 1)")
    ss = np.random.SeedSequence(seed)
    part_seed, *series_seeds = ss.spawn(N + 1)
    if split == 0.0:
        pools = [(pool, N, "evaluation")]
    else:
        rng = np.random.default_rng(part_seed)
        val_pick, eval_pick = {}, {}
        for lab, insts in pool.classes.items():
            perm = rng.permutation(len(insts))
            cut = int(round(split * len(insts)))
            val_pick[lab], eval_pick[lab] = perm[:cut], perm[cut:]
        n_val = int(round(split * N))
        pools = [(pool.subset(val_pick), n_val, "validation"),
                 (pool.subset(eval_pick), N - n_val, "evaluation")]
    out = []
    seeds = iter(series_seeds)
    for sub, count, name in pools:
        if count == 0:
            continue
        rf = None if repeated_from is None else [lab for lab in repeated_from if lab in sub.classes]
        for _ in range(count):
            bench = generate_one(sub, occurrences, np.random.default_rng(next(seeds)), rf)
            bench.subset = name
            out.append(bench)
    return out


def check_structure(bench: GeneratedBenchmark) -> None:
    """Raise ValueError if `bench` violates the generation invariants."""
    prov = bench.provenance
    pos = 1
    for _, _, seg in prov:
        if seg.b != pos:
            raise ValueError("provenance does not tile the series")
        pos = seg.e + 1
    if pos - 1 != len(bench.series):
        raise ValueError("provenance does not cover the series")
    labels = [lab for lab, _, _ in prov]
    rep = set(bench.repeated)
    for a, c in zip(labels, labels[1:]):
        if a in rep and c in rep:
            raise ValueError("two repeated instances are adjacent")
    for lab in set(labels) - rep:
        if labels.count(lab) != 1:
            raise ValueError(f"separator class {lab} appears more than once")
