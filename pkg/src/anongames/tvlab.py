"""Empirical total-variation checks for the discretization and the
Poisson-style approximation bounds it leans on.

The headline distance bound has an unestimated dimension constant, so it
cannot be checked numerically as stated; the operational proxies are
(a) flatness of the discretization TV in the number of vectors and
(b) monotone decrease in the grid parameter z, both over shared random
profiles.  The appendix-style closed-form bounds (Bernoulli sums vs
Poisson, two Poissons, two translated Poissons) are proven facts and are
checked directly: a failure means an implementation bug, not new science.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import stats

from .discretize import DEFAULT_ALPHA, discretize_profile
from .games import (MixedProfile, as_fraction, partition_count, random_profile)
from .guards import LATTICE_CAP, check_guard
from .sumdist import sum_distribution, tv_distance
from .tdp import floor_root_power

PMF_TAIL = 1e-12   # truncate Poisson-family pmfs where the tail is below this


def poisson_binomial_pmf(probs: Sequence, exact: bool = True) -> tuple:
    """pmf of a sum of independent Bernoullis over {0..n}, by the standard
    one-row DP.  Exact mode matches the k=2 marginal of sum_distribution."""
    if exact:
        ps = [as_fraction(p) for p in probs]
        zero, one = Fraction(0), Fraction(1)
    else:
        ps = [float(p) for p in probs]
        zero, one = 0.0, 1.0
    if any(p < 0 or p > 1 for p in ps):
        raise ValueError("Bernoulli parameters must lie in [0, 1]")
    pmf = [one]
    for p in ps:
        nxt = [zero] * (len(pmf) + 1)
        for j, mass in enumerate(pmf):
            if mass == 0:
                continue
            nxt[j] += mass * (1 - p)
            nxt[j + 1] += mass * p
        pmf = nxt
    return tuple(pmf)


def _poisson_pmf_truncated(lam: float) -> np.ndarray:
    """Poisson pmf on 0..N with P(X > N) < PMF_TAIL."""
    if lam < 0:
        raise ValueError("rate must be non-negative")
    if lam == 0:
        return np.array([1.0])
    n = int(stats.poisson.ppf(1.0 - PMF_TAIL, lam)) + 1
    while stats.poisson.sf(n, lam) >= PMF_TAIL:
        n += 1
    return stats.poisson.pmf(np.arange(n + 1), lam)


def _tv_aligned(p: np.ndarray, off_p: int, q: np.ndarray, off_q: int) -> float:
    """TV of two truncated integer pmfs given their support offsets.

    The truncated tails (< PMF_TAIL each) are added in full, making the
    result a slight over-estimate; every bound check here compares with
    a <=, so the conservative direction is the safe one.
    """
    lo = min(off_p, off_q)
    hi = max(off_p + len(p), off_q + len(q))
    grid_p = np.zeros(hi - lo)
    grid_q = np.zeros(hi - lo)
    grid_p[off_p - lo:off_p - lo + len(p)] = p
    grid_q[off_q - lo:off_q - lo + len(q)] = q
    tails = (1.0 - p.sum()) + (1.0 - q.sum())
    return float(0.5 * (np.abs(grid_p - grid_q).sum() + max(tails, 0.0)))


@dataclass(frozen=True)
class BoundCheck:
    tv: float
    bound: float
    passed: bool


def poisson_tv_check(probs: Sequence, z: int, alpha) -> BoundCheck:
    """Bernoulli sum vs Poisson at the same mean.

    Requires every parameter at most floor(z^alpha)/z; the distance is then
    at most 1/z^(1-alpha).
    """
    alpha = as_fraction(alpha)
    threshold = Fraction(floor_root_power(z, alpha), z)
    ps = [as_fraction(p) for p in probs]
    if any(p > threshold for p in ps):
        raise ValueError(f"all Bernoulli parameters must be <= {threshold}")
    pb = np.array(poisson_binomial_pmf(ps, exact=False))
    lam = float(sum(ps))
    po = _poisson_pmf_truncated(lam)
    tv = _tv_aligned(pb, 0, po, 0)
    bound = float(z) ** (float(alpha) - 1.0)
    return BoundCheck(tv=tv, bound=bound, passed=bool(tv <= bound))


def translated_poisson_pmf(mu: float, var: float) -> tuple[int, np.ndarray]:
    """Poisson(var + frac(mu - var)) shifted by floor(mu - var); returns
    (offset, pmf over offset..offset+N)."""
    if var <= 0:
        raise ValueError("variance must be positive")
    shift = int(np.floor(mu - var))
    lam = var + ((mu - var) - shift)
    return shift, _poisson_pmf_truncated(lam)


def translated_poisson_tv_check(mu1: float, var1: float,
                                mu2: float, var2: float) -> BoundCheck:
    """Two translated Poissons: distance at most
    |mu1-mu2|/sigma1 + (|var1-var2| + 1)/var1, with the parameter pair of
    smaller floor(mu - var) playing the role of the first (swapped in if
    needed)."""
    if var1 <= 0 or var2 <= 0:
        raise ValueError("variances must be positive")
    if np.floor(mu1 - var1) > np.floor(mu2 - var2):
        mu1, var1, mu2, var2 = mu2, var2, mu1, var1
    off1, p1 = translated_poisson_pmf(mu1, var1)
    off2, p2 = translated_poisson_pmf(mu2, var2)
    tv = _tv_aligned(p1, off1, p2, off2)
    bound = abs(mu1 - mu2) / np.sqrt(var1) + (abs(var1 - var2) + 1.0) / var1
    return BoundCheck(tv=tv, bound=float(bound), passed=bool(tv <= bound))


def poisson_poisson_tv_check(lam0: float, d: float) -> BoundCheck:
    """Poisson(lam0 + d) vs Poisson(lam0): distance at most d*sqrt(2/lam0)."""
    if lam0 <= 0:
        raise ValueError("lam0 must be positive")
    if d <= 0:
        raise ValueError("d must be positive")
    p = _poisson_pmf_truncated(lam0 + d)
    q = _poisson_pmf_truncated(lam0)
    tv = _tv_aligned(p, 0, q, 0)
    bound = d * np.sqrt(2.0 / lam0)
    return BoundCheck(tv=tv, bound=float(bound), passed=bool(tv <= bound))


def discretization_tv(profile: MixedProfile, z: int,
                      alpha=DEFAULT_ALPHA) -> tuple[float, float]:
    """(full-sum TV, max over dropped players of the leave-one-out TV)
    between a profile and its discretization.  Convolutions are exact;
    only the final distances are floats."""
    disc = discretize_profile(profile, z, alpha)
    n, k = profile.n, profile.k

    def tv_of(rows_a, rows_b):
        pa = sum_distribution(rows_a, k=k, exact=True).to_floats()
        pb = sum_distribution(rows_b, k=k, exact=True).to_floats()
        return tv_distance(pa, pb)

    tv = tv_of(profile.probs, disc.probs)
    loo = 0.0
    for j in range(n):
        rows_a = [profile.probs[i] for i in range(n) if i != j]
        rows_b = [disc.probs[i] for i in range(n) if i != j]
        loo = max(loo, tv_of(rows_a, rows_b))
    return tv, loo


@dataclass(frozen=True)
class TvExperimentRow:
    k: int
    z: int
    alpha: Fraction
    n: int
    trial: int
    seed: int
    tv: float
    tv_loo_max: float


CSV_HEADER = "k,z,alpha,n,trial,seed,tv,tv_loo_max"


def rows_to_csv(rows: Sequence[TvExperimentRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.k},{r.z},{r.alpha},{r.n},{r.trial},{r.seed},"
                     f"{r.tv!r},{r.tv_loo_max!r}")
    return "\n".join(lines) + "\n"


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def mix_trial_seed(base_seed: int, z: int, n: int, trial: int) -> int:
    """Per-trial profile seed.  z is accepted for interface symmetry but
    deliberately ignored: a sweep over z must reuse the identical random
    profiles so per-z medians are comparable."""
    del z
    x = _splitmix64(base_seed & _MASK64)
    x = _splitmix64(x ^ (n & _MASK64))
    x = _splitmix64(x ^ (trial & _MASK64))
    return x >> 1   # keep it a non-negative int63 for any seed consumer


def _run_trial(args) -> TvExperimentRow:
    k, z, alpha_s, n, trial, seed, denominator = args
    alpha = Fraction(alpha_s)
    profile = random_profile(n, k, seed, denominator=denominator)
    tv, loo = discretization_tv(profile, z, alpha)
    return TvExperimentRow(k=k, z=z, alpha=alpha, n=n, trial=trial,
                           seed=seed, tv=tv, tv_loo_max=loo)


def n_independence_experiment(k: int, z_list: Sequence[int], n_list: Sequence[int],
                              trials: int, base_seed: int,
                              alpha=DEFAULT_ALPHA, denominator: int = 1000,
                              jobs: int = 1) -> list[TvExperimentRow]:
    """Discretization TV for every (z, n, trial), rows ordered by (z, n,
    trial) regardless of how the work is scheduled.  Profiles depend on
    (base_seed, n, trial) only, so z-sweeps see the same draws."""
    if trials < 1 or any(n < 1 for n in n_list):
        raise ValueError("need trials >= 1 and every n >= 1")
    alpha = as_fraction(alpha)
    check_guard(max(partition_count(n, k) for n in n_list),
                f"partition lattice for k={k}, n={max(n_list)}", LATTICE_CAP)
    tasks = [(k, z, str(alpha), n, trial,
              mix_trial_seed(base_seed, z, n, trial), denominator)
             for z in z_list for n in n_list for trial in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_trial, tasks, chunksize=8))
    else:
        rows = [_run_trial(t) for t in tasks]
    return rows
