"""The closed-form distance bounds behind the small/large leaf split.

Leaves with small success probabilities behave like Poisson variables;
leaves with large ones like translated (mean-shifted) Poissons.  Both
regimes come with explicit total-variation bounds, checked numerically
here: the measured distance always sits under the closed form.
"""

from fractions import Fraction as F

import numpy as np

from anongames import (poisson_poisson_tv_check, poisson_tv_check,
                       translated_poisson_tv_check)

print("== Bernoulli sum vs Poisson (small-expectation regime) ==")
chk = poisson_tv_check([F(1, 100)] * 50, z=100, alpha=F(1, 2))
print(f"  50 coins at 0.01: TV {chk.tv:.6f} <= bound {chk.bound:.4f}: {chk.passed}")

print("\n== two Poissons a rate-shift apart ==")
for lam0, d in ((4.0, 1.0), (25.0, 2.5), (1.0, 0.1)):
    chk = poisson_poisson_tv_check(lam0, d)
    print(f"  rate {lam0:5.1f} vs +{d:<4}: TV {chk.tv:.5f} <= {chk.bound:.5f}")

print("\n== two translated Poissons (large-expectation regime) ==")
rng = np.random.default_rng(3)
for _ in range(5):
    mu1, mu2 = rng.uniform(5, 30, size=2)
    v1, v2 = rng.uniform(2, 15, size=2)
    chk = translated_poisson_tv_check(mu1, v1, mu2, v2)
    print(f"  ({mu1:5.2f},{v1:5.2f}) vs ({mu2:5.2f},{v2:5.2f}): "
          f"TV {chk.tv:.5f} <= {chk.bound:.5f}")
