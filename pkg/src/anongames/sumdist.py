"""Exact laws of sums of independent categorical unit vectors.

The sum of n independent draws, each a unit vector e_l with probability
p_i(l), lives on the partition lattice Pi^k_n.  The full distribution is
computed by iterative convolution, growing the lattice one vector at a
time.  Two arithmetic modes exist and are always chosen explicitly:
exact rationals (used for every certification) and float64 (used for
bulk total-variation experiments).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GameFormatError
from .games import (AnonymousGame, MixedProfile, as_fraction,
                    enumerate_partitions, partition_count)

FLOAT_INPUT_TOL = 1e-9     # row-sum tolerance for float-mode inputs
FLOAT_OUTPUT_TOL = 1e-12   # mass-sum tolerance for float-mode outputs


@dataclass(frozen=True)
class SumDistribution:
    """Probability mass over Pi^k_m, indexed by canonical partition rank."""

    m: int
    k: int
    mass: tuple

    def support(self) -> tuple:
        return enumerate_partitions(self.m, self.k)

    def as_dict(self) -> dict:
        return dict(zip(self.support(), self.mass))

    def to_floats(self) -> "SumDistribution":
        return SumDistribution(self.m, self.k, tuple(float(v) for v in self.mass))

    def to_csv(self) -> str:
        lines = ["partition_rank,mass"]
        lines += [f"{r},{float(v)!r}" for r, v in enumerate(self.mass)]
        return "\n".join(lines) + "\n"


def _check_vector(vec, exact: bool):
    if exact:
        vals = tuple(as_fraction(v) for v in vec)
        if any(v < 0 for v in vals):
            raise ValueError("negative probability entry")
        if sum(vals) != 1:
            raise ValueError("probability vector must sum to exactly 1 in exact mode")
    else:
        vals = tuple(float(v) for v in vec)
        if any(v < 0 for v in vals):
            raise ValueError("negative probability entry")
        total = sum(vals)
        if abs(total - 1.0) > FLOAT_INPUT_TOL:
            raise ValueError("probability vector must sum to 1 within 1e-9")
        # renormalize the admitted drift so the output mass-sum check stays
        # at machine precision
        vals = tuple(v / total for v in vals)
    return vals


def sum_distribution(vectors: Sequence[Sequence], k: int | None = None,
                     exact: bool = True) -> SumDistribution:
    """Exact law of the sum of independent unit vectors.

    vectors[i][l] is the probability that draw i lands on strategy l.  The
    lattice grows with the fold (after i vectors the state lives on
    Pi^k_i), which keeps memory at the final lattice size.  An empty input
    is the convolution identity: a point mass at the all-zero partition
    (k must then be given explicitly).
    """
    vectors = list(vectors)
    if k is None:
        if not vectors:
            raise ValueError("k is required for an empty vector list")
        k = len(vectors[0])
    if any(len(v) != k for v in vectors):
        raise ValueError("all vectors must have length k")

    one = Fraction(1) if exact else 1.0
    state = {(0,) * k: one}
    for vec in vectors:
        vals = _check_vector(vec, exact)
        nxt: dict = {}
        for part, mass in state.items():
            for ell, p in enumerate(vals):
                if p == 0:
                    continue
                key = part[:ell] + (part[ell] + 1,) + part[ell + 1:]
                if key in nxt:
                    nxt[key] = nxt[key] + mass * p
                else:
                    nxt[key] = mass * p
        state = nxt

    m = len(vectors)
    zero = Fraction(0) if exact else 0.0
    mass = tuple(state.get(part, zero) for part in enumerate_partitions(m, k))
    total = sum(mass)
    if exact:
        assert total == 1
    elif abs(total - 1.0) > FLOAT_OUTPUT_TOL:
        raise ValueError(f"float-mode mass sum drifted to {total!r}")
    return SumDistribution(m=m, k=k, mass=mass)


def tv_distance(p: SumDistribution, q: SumDistribution):
    """Total variation distance, (1/2) * sum |P(a) - Q(a)|.

    Exact when both masses are rational, float otherwise.
    """
    if (p.m, p.k) != (q.m, q.k):
        raise ValueError(f"mismatched lattices: Pi^{p.k}_{p.m} vs Pi^{q.k}_{q.m}")
    return sum(abs(a - b) for a, b in zip(p.mass, q.mass)) / 2


def expected_utility(game: AnonymousGame, player: int, strategy: int,
                     others: Sequence[Sequence], exact: bool = True):
    """E[u^p_i(x)] where x is the partition induced by the n-1 opponents."""
    if len(others) != game.n - 1:
        raise ValueError(f"expected {game.n - 1} opponent strategies, got {len(others)}")
    dist = sum_distribution(others, k=game.k, exact=exact)
    row = game.utilities[player][strategy]
    if exact:
        return sum(u * m for u, m in zip(row, dist.mass))
    return sum(float(u) * m for u, m in zip(row, dist.mass))


@dataclass(frozen=True)
class RegretReport:
    """Exact per-player payoff and regret summary for a mixed profile.

    support_gap is the epsilon-Nash quantity: the worst shortfall of a
    strategy actually played (positive probability) from the best pure
    response.  approx_regret is the weaker expectation gap.  A profile is
    an eps-Nash equilibrium iff max_support_gap <= eps (a gap of exactly
    eps is accepted: the definition's trigger is a strict inequality).
    """

    payoffs: tuple          # payoffs[p][i] = E[u^p_i], exact
    approx_regret: tuple
    support_gap: tuple

    @property
    def max_approx_regret(self) -> Fraction:
        return max(self.approx_regret)

    @property
    def max_support_gap(self) -> Fraction:
        return max(self.support_gap)

    def is_epsilon_nash(self, epsilon) -> bool:
        return self.max_support_gap <= as_fraction(epsilon)


def regret_profile(game: AnonymousGame, profile: MixedProfile) -> RegretReport:
    """Exact regrets of every player under `profile` (rational arithmetic)."""
    if profile.n != game.n or profile.k != game.k:
        raise GameFormatError("profile dimensions disagree with the game")
    payoffs = []
    approx = []
    gaps = []
    for p in range(game.n):
        others = [profile.probs[q] for q in range(game.n) if q != p]
        dist = sum_distribution(others, k=game.k, exact=True)
        row_payoffs = tuple(
            sum(u * m for u, m in zip(game.utilities[p][i], dist.mass))
            for i in range(game.k))
        best = max(row_payoffs)
        mix = profile.probs[p]
        approx.append(best - sum(w * v for w, v in zip(mix, row_payoffs)))
        gaps.append(max(best - row_payoffs[i] for i in range(game.k) if mix[i] > 0))
        payoffs.append(row_payoffs)
    return RegretReport(payoffs=tuple(payoffs), approx_regret=tuple(approx),
                        support_gap=tuple(gaps))
