"""
Building benchmark series from labeled instances
================================================

Instances of a few classes are concatenated so that repeated classes are
always separated by a class that occurs only once, e.g. ``A C B D A E B``.
The repeated classes form the ground truth.
"""

import numpy as np

from locomotif import evaluate, locomotif
from locomotif.benchgen import check_structure, generate_suite, kappa_max
from locomotif.synthetic import TEMPLATES, sinusoid_pool

pool = sinusoid_pool(per_class=6, seed=0)
print("classes:", pool.labels)
print("at most", kappa_max(pool.c), "ground-truth motif sets for", pool.c, "classes")

###############################################################################
# A small suite. Only the two sinusoid templates are allowed to repeat, the
# filler shapes act as separators.

suite = generate_suite(pool, N=4, seed=3, repeated_from=list(TEMPLATES))
for bench in suite:
    check_structure(bench)
    print(len(bench.series), [lab for lab, _, _ in bench.provenance])

###############################################################################
# Discover and score each series.

scores = []
for bench in suite:
    res = locomotif(bench.series, l_min=35, l_max=70, kappa=bench.kappa)
    scores.append(evaluate(bench.ground_truth, res.segments())[2])
print("F1 per series:", np.round(scores, 3))
