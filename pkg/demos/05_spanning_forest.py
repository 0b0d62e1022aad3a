"""A spanning forest of 7-regular trees inside the genus-2 Cayley graph.

Deleting one edge per vertex, along a matching, leaves a forest whose
trees have degree 7.  The spectral radius is then at most that of the
7-regular tree plus the share of the deleted edge.

Run:  python3 demos/05_spanning_forest.py [dump-path]
"""
import sys

import numpy as np

from surfwalk.ball import build_ball
from surfwalk.bounds import tree_bound
from surfwalk.forest import PHASE1, PHASE2, build_forest, verify_forest
from surfwalk.words import surface_presentation

b = build_ball(surface_presentation(2), 6)
f = build_forest(b)
cert = verify_forest(b, f)
print("removed in phase 1:", len(f.removed_edges(PHASE1)), " phase 2:", len(f.removed_edges(PHASE2)))
print("certificate:", cert.to_dict())
vals, counts = np.unique(f.degrees(), return_counts=True)
print("degree histogram:", {int(v): int(c) for v, c in zip(vals, counts)})
print("tree bound for genus 2:", round(tree_bound(8, 7), 4))

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        f.dump(fh)
    print("edge list written to", sys.argv[1])
