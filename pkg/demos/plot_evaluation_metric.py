"""
Scoring discovered motif sets
=============================

Segments are matched on intersection over union, match counts are aligned
so that the diagonal is as large as possible, and precision and recall are
micro-averaged over that diagonal.
"""

from locomotif import GroundTruth, Segment, evaluate, matching_matrix

gt = GroundTruth([
    [Segment(1, 10), Segment(21, 30), Segment(41, 50)],
    [Segment(61, 70), Segment(81, 90)],
])

# discovered sets in the "wrong" order, one segment shifted too far, one spurious
found = [
    [Segment(60, 69), Segment(82, 90)],
    [Segment(2, 11), Segment(21, 30), Segment(45, 56), Segment(95, 99)],
]

mm = matching_matrix(gt, found)
print("row order", mm.gt_order, "column order", mm.found_order)
print(mm.matrix)

# last column: ground-truth segments left unmatched; last row: spurious ones
precision, recall, f1 = evaluate(gt, found)
print(f"precision {precision:.3f}  recall {recall:.3f}  f1 {f1:.3f}")

###############################################################################
# Listing the discovered sets in another order changes nothing.

print(evaluate(gt, found[::-1]))
