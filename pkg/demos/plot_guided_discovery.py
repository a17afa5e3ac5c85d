"""
Restricting where motifs may start and end
==========================================

In recordings with resting periods between repetitions, motifs should start
and end close to the resting level. Boundary masks derived from the idle
stretches constrain the representative's endpoints to such samples.
"""

import numpy as np

from locomotif import guidance_mask_from_rest, locomotif

rng = np.random.default_rng(4)
u = np.linspace(0, 1, 60)
move = np.sin(np.pi * u) ** 2 * 2 + 0.3 * np.sin(2 * np.pi * 4 * u)


def rest(n):
    # a resting sensor drifts slowly instead of staying perfectly flat
    return np.cumsum(0.03 * rng.standard_normal(n))


parts, planted, pos = [], [], 0
for _ in range(4):
    r = rest(int(rng.integers(60, 90)))
    parts += [r, move + 0.05 * rng.standard_normal(60)]
    planted.append((pos + len(r) + 1, pos + len(r) + 60))
    pos += len(r) + 60
parts.append(rest(60))
x = np.concatenate(parts)
print("repetitions at", planted)

###############################################################################
# Idle stretches are windows of length l_max whose variance stays below the
# threshold. A third of the remaining samples, those closest to the idle
# mean, become the allowed boundaries.

start_mask, end_mask = guidance_mask_from_rest(x, l_max=80, var_threshold=0.01)
print(start_mask.sum(), "of", len(x), "indices allowed as boundaries")

###############################################################################
# Here free discovery already finds the repetitions; the masks move the
# representative's endpoints onto near-rest samples.

for name, kw in [("free", {}), ("guided", dict(start_mask=start_mask, end_mask=end_mask))]:
    res = locomotif(x, l_min=40, l_max=80, kappa=1, **kw)
    for ms in res:
        print(f"{name:7s} representative {tuple(ms.alpha)}, members {[tuple(m) for m in ms.members]}")
