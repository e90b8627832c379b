"""Decomposing a mixed strategy into a trickle-down tree.

A distribution over many strategies becomes a binary tree whose leaves
hold two-outcome distributions: walk down with fair coins, then make one
biased choice at the leaf.  The decomposition is exactly invertible, and
its shape (plus per-leaf small/large typing) is the clustering key the
rounding stage groups players by.
"""

import random
from fractions import Fraction as F

from anongames import build_tdp_tree, reconstruct_distribution, sample_strategy
from anongames.tdp import cell_signature, format_tree

probs = [F(1, 3), F(1, 3), F(1, 3)]
tree = build_tdp_tree([1, 2, 3], probs)
print("== tree of the uniform distribution on {1,2,3} ==")
print(format_tree(tree, z=100, alpha=F(3, 5)))

print("== exact reconstruction ==")
print(" ", reconstruct_distribution(tree))

print("\n== sampling through the tree reproduces the law ==")
rng = random.Random(42)
trials = 30_000
counts = {1: 0, 2: 0, 3: 0}
for _ in range(trials):
    counts[sample_strategy(tree, rng)] += 1
for s, c in counts.items():
    print(f"  strategy {s}: {c / trials:.4f} (target {float(probs[0]):.4f})")

print("\n== nearby distributions share a cell; crossing an ordering does not ==")
a = build_tdp_tree([1, 2, 3], [F(30, 100), F(40, 100), F(30, 100)])
b = build_tdp_tree([1, 2, 3], [F(29, 100), F(41, 100), F(30, 100)])
c = build_tdp_tree([1, 2, 3], [F(20, 100), F(50, 100), F(30, 100)])
za = F(3, 5)
print("  (0.30,0.40,0.30) ~ (0.29,0.41,0.30):",
      cell_signature(a, 100, za) == cell_signature(b, 100, za))
print("  (0.30,0.40,0.30) ~ (0.20,0.50,0.30):",
      cell_signature(a, 100, za) == cell_signature(c, 100, za))
