"""Partition lattice basics: enumeration, ranking, and exact sum laws.

The outcome space of n players over k strategies (seen from one player's
chair) is the set of k-part compositions of n-1.  Everything downstream
indexes that lattice by one canonical rank, so we start there, then build
the exact distribution of a sum of independent categorical draws and
measure distances on it.
"""

from fractions import Fraction as F

from anongames import (enumerate_partitions, partition_rank, random_profile,
                       sum_distribution, tv_distance)

print("== the lattice Pi^3_2 (two players over three strategies) ==")
for part in enumerate_partitions(2, 3):
    print(f"  rank {partition_rank(part)}: {part}")

print("\n== exact sum law of three biased players ==")
profile = [(F(1, 2), F(1, 4), F(1, 4)),
           (F(1, 3), F(1, 3), F(1, 3)),
           (F(0), F(1, 10), F(9, 10))]
dist = sum_distribution(profile)
for part, mass in dist.as_dict().items():
    print(f"  P[{part}] = {mass}  (~{float(mass):.4f})")
print(f"  total mass: {sum(dist.mass)} (exact)")

print("\n== total variation between two random profiles' sums ==")
a = sum_distribution(random_profile(5, 3, seed=1).probs)
b = sum_distribution(random_profile(5, 3, seed=2).probs)
print(f"  TV = {float(tv_distance(a, b)):.6f}")

print("\n== permuting the players never moves the sum ==")
rows = list(random_profile(4, 3, seed=3).probs)
before = sum_distribution(rows)
rows.reverse()
after = sum_distribution(rows)
print(f"  TV(original, reversed) = {float(tv_distance(before, after))}")
