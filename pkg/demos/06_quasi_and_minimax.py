"""The two other consumers of grid discretization.

First, general normal-form games: a grid of pitch eps/(2 p s) always
contains an eps-approximate equilibrium (rounding an exact one onto the
grid costs at most eps/2 per expected utility), so exhaustive grid search
is complete.  Second, the threat-point minimax over Bernoulli-sum
expectations: exchangeability shrinks the search to multisets of grid
values.
"""

from fractions import Fraction as F

from anongames import (NormalFormGame, ObjectiveFunctions, minimax_oracle,
                       minimax_ptas, perturbation_check, quasi_solve)


def matching_pennies():
    """Row player paid 1 on a match, column player paid 1 on a mismatch."""
    return NormalFormGame(p=2, s=2, utilities=(
        (F(1), F(0), F(0), F(1)), (F(0), F(1), F(1), F(0))))


print("== matching pennies on the quasi grid ==")
game = matching_pennies()
res = quasi_solve(game, F(3, 10))
print(f"  delta = {res.delta}, per-strategy grid units = {res.grid_units}")
for i, row in enumerate(res.profile):
    print(f"  player {i}: ({', '.join(map(str, row))})  regret {res.regret[i]}")

print("\n== the perturbation step on the known equilibrium ==")
ne = ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)))
chk = perturbation_check(game, ne, F(3, 10))
print(f"  rounded {[tuple(map(str, r)) for r in chk.rounded]}")
print(f"  regret after rounding: {max(chk.regret)} <= 3/10: {chk.passed}")

print("\n== threat-point minimax: even-vs-odd scoring needs randomness ==")
n = 6
parity = ObjectiveFunctions(n=n, tables=(
    tuple(F(1) if j % 2 == 0 else F(0) for j in range(n + 1)),
    tuple(F(2, 3) if j % 2 == 1 else F(0) for j in range(n + 1))))
coarse = minimax_ptas(parity, F(1, 4))
fine = minimax_oracle(parity, 32)
print(f"  eps=1/4 grid: value {coarse.value:.6f} at {tuple(map(str, coarse.probs))}")
print(f"  1/32 grid:    value {fine.value:.6f} at {tuple(map(str, fine.probs))}")
print(f"  coarse >= fine (nesting): {coarse.value >= fine.value}")

print("\n== maximin variant via complementation ==")
skew = ObjectiveFunctions(n=1, tables=((F(0), F(1)),))
print(f"  min of E[f]: {minimax_ptas(skew, F(1, 2)).value}")
print(f"  max of E[f]: {minimax_ptas(skew, F(1, 2), maximin=True).value}")
