"""Synthetic labeled instance pools for benchmarks and demos."""
from __future__ import annotations

import numpy as np

from .benchgen import LabeledInstancePool

TEMPLATES = {
    "sine_a": lambda u: np.sin(2 * np.pi * 2 * u),
    "sine_b": lambda u: np.sin(2 * np.pi * u) + 0.6 * np.sin(2 * np.pi * 3 * u + 0.5),
}

FILLERS = {
    "square": lambda u: np.sign(np.sin(2 * np.pi * 1.5 * u) + 1e-9),
    "ramp": lambda u: 2 * u - 1,
    "bump": lambda u: np.exp(-((u - 0.5) ** 2) / 0.01),
    "chirp": lambda u: np.sin(2 * np.pi * (1 + 4 * u) * u),
    "decay": lambda u: np.exp(-4 * u) * np.cos(2 * np.pi * 5 * u),
}


def shape_instances(shape, count: int, rng: np.random.Generator, length=(40, 60),
                    noise: float = 0.1, stretch=None) -> list[np.ndarray]:
    """Noisy samples of `shape` on ``[0, 1]`` with random integer lengths.

    `stretch`, if given as ``(lo, hi)``, rescales each length by a factor
    drawn uniformly from that range.
    """
    out = []
    for _ in range(count):
        n = int(rng.integers(length[0], length[1] + 1))
        if stretch is not None:
            n = max(2, int(round(n * rng.uniform(*stretch))))
        u = np.linspace(0.0, 1.0, n)
        out.append(shape(u) + noise * rng.standard_normal(n))
    return out


def sinusoid_pool(per_class: int = 10, seed=None, noise: float = 0.1, length=(40, 60),
                  stretch=None) -> LabeledInstancePool:
    """Two sinusoid template classes plus five filler classes.

    Only the template classes are time-stretched when `stretch` is given.
    """
    rng = np.random.default_rng(seed)
    classes = {}
    for name, f in TEMPLATES.items():
        classes[name] = shape_instances(f, per_class, rng, length, noise, stretch)
    for name, f in FILLERS.items():
        classes[name] = shape_instances(f, per_class, rng, length, noise)
    return LabeledInstancePool(classes)
