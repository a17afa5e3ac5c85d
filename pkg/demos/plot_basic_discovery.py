"""
Discovering motif sets in a noisy series
========================================

A random walk with two patterns planted a few times each, some of them
stretched in time. LoCoMotif should return one motif set per pattern.
"""

import numpy as np

from locomotif import locomotif

rng = np.random.default_rng(1)
x = np.cumsum(rng.standard_normal(600)) * 0.3

# two shapes on [0, 1]
u = np.linspace(0, 1, 50)
shapes = [np.sin(2 * np.pi * 2 * u) * 3, np.exp(-((u - 0.5) ** 2) / 0.02) * 4]

# plant each shape three times, at lengths between 40 and 62 samples
planted = {0: [], 1: []}
starts = [20, 120, 220, 320, 420, 520]
for k, start in enumerate(starts):
    which = k % 2
    L = int(rng.integers(40, 63))
    stretched = np.interp(np.linspace(0, 49, L), np.arange(50), shapes[which])
    x[start:start + L] = stretched + 0.1 * rng.standard_normal(L)
    planted[which].append((start + 1, start + L))

print("planted (1-based, inclusive):", planted)

###############################################################################
# Run discovery. l_min and l_max bound the representative's length; members
# may be up to twice as long or half as short because of time warping.

result = locomotif(x, l_min=35, l_max=70, rho=0.8, kappa=2)

for i, ms in enumerate(result):
    print(f"motif set {i}: fitness {ms.fitness:.3f}, representative {tuple(ms.alpha)}")
    for m in ms.members:
        print("   ", tuple(m), "length", len(m))

###############################################################################
# The extracted warping paths are kept on the result, which is handy when
# inspecting why a candidate was or was not chosen.

print(len(result.paths), "local warping paths, tau =", round(result.tau, 4))
