"""Anonymous games over the partition lattice.

An anonymous game with n players and k strategies gives each (player,
strategy) pair a utility table over the partitions of the other n-1
players into the k strategies.  Everything here is exact: utilities and
mixed-strategy probabilities are `fractions.Fraction`, and serialization
round-trips them bit for bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import GameFormatError

Partition = tuple  # a k-tuple of non-negative ints


def as_fraction(value) -> Fraction:
    """Coerce ints, floats, Fractions and 'num/den' strings to Fraction.

    Floats are promoted to their exact dyadic value (no decimal guessing),
    so the conversion is lossless and deterministic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a probability/utility value")
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def partition_count(m: int, k: int) -> int:
    """|Pi^k_m| = C(m+k-1, k-1)."""
    return math.comb(m + k - 1, k - 1)


@lru_cache(maxsize=None)
def enumerate_partitions(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All k-tuples of non-negative integers summing to m, in ascending
    lexicographic order with the first coordinate most significant.

    The index of a tuple in this sequence is its canonical rank; file
    formats and every DP table in the package index by that rank.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if m < 0:
        raise ValueError("m must be >= 0")
    if k == 1:
        return ((m,),)
    out = []
    for first in range(m + 1):
        out.extend((first,) + rest for rest in enumerate_partitions(m - first, k - 1))
    return tuple(out)


def partition_rank(partition: Sequence[int], m: int | None = None,
                   k: int | None = None) -> int:
    """Canonical rank of a partition, the inverse of enumerate_partitions.

    Raises ValueError on a malformed partition (negative entry, or a sum /
    length disagreeing with a declared m / k).
    """
    counts = tuple(partition)
    if any((not isinstance(x, int)) or x < 0 for x in counts):
        raise ValueError(f"malformed partition {counts}: negative or non-integer entry")
    if k is not None and len(counts) != k:
        raise ValueError(f"malformed partition {counts}: expected {k} parts")
    if m is not None and sum(counts) != m:
        raise ValueError(f"malformed partition {counts}: sum {sum(counts)} != {m}")
    rank = 0
    remaining = sum(counts)
    parts_left = len(counts)
    for x in counts[:-1]:
        parts_left -= 1
        for v in range(x):
            rank += math.comb(remaining - v + parts_left - 1, parts_left - 1)
        remaining -= x
    return rank


def _rank_map(m: int, k: int) -> dict:
    return {p: r for r, p in enumerate(enumerate_partitions(m, k))}


@dataclass(frozen=True)
class AnonymousGame:
    """n players, k strategies, utilities[player][strategy][partition_rank].

    All utility values lie in [0, 1] and are stored as exact rationals; the
    table is dense and total (one entry per partition of the other n-1
    players).  Instances are immutable and safe to share across workers.
    """

    n: int
    k: int
    utilities: tuple

    def __post_init__(self):
        if self.n < 2 or self.k < 2:
            raise GameFormatError("anonymous game needs n >= 2 and k >= 2")
        size = partition_count(self.n - 1, self.k)
        if len(self.utilities) != self.n:
            raise GameFormatError("table size mismatch: expected one row per player")
        coerced = []
        for p, per_player in enumerate(self.utilities):
            if len(per_player) != self.k:
                raise GameFormatError(
                    f"table size mismatch: player {p} has {len(per_player)} strategies")
            rows = []
            for i, row in enumerate(per_player):
                if len(row) != size:
                    raise GameFormatError(
                        f"table size mismatch: player {p} strategy {i} has "
                        f"{len(row)} entries, expected {size}")
                vals = tuple(as_fraction(v) for v in row)
                if any(v < 0 or v > 1 for v in vals):
                    raise GameFormatError("utility out of range [0, 1]")
                rows.append(vals)
            coerced.append(tuple(rows))
        object.__setattr__(self, "utilities", tuple(coerced))

    @property
    def table_size(self) -> int:
        return partition_count(self.n - 1, self.k)

    def utility(self, player: int, strategy: int, partition: Sequence[int]) -> Fraction:
        rank = partition_rank(partition, m=self.n - 1, k=self.k)
        return self.utilities[player][strategy][rank]

    def min_nonzero_utility(self) -> Fraction | None:
        """Smallest non-zero utility value, or None if all payoffs are zero."""
        best = None
        for per_player in self.utilities:
            for row in per_player:
                for v in row:
                    if v > 0 and (best is None or v < best):
                        best = v
        return best


@dataclass(frozen=True)
class MixedProfile:
    """One exact probability vector over [k] per player."""

    probs: tuple

    def __post_init__(self):
        rows = []
        for p, row in enumerate(self.probs):
            vals = tuple(as_fraction(v) for v in row)
            if any(v < 0 for v in vals):
                raise GameFormatError(f"probability out of range in row {p}")
            if sum(vals) != 1:
                raise GameFormatError(f"profile row {p} must sum to exactly 1")
            rows.append(vals)
        if not rows:
            raise GameFormatError("profile needs at least one player")
        if len({len(r) for r in rows}) != 1:
            raise GameFormatError("profile rows must share one strategy count")
        object.__setattr__(self, "probs", tuple(rows))

    @property
    def n(self) -> int:
        return len(self.probs)

    @property
    def k(self) -> int:
        return len(self.probs[0])


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_game(data: bytes | str) -> AnonymousGame:
    """Parse the JSON game format; validates every AnonymousGame invariant."""
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"malformed game file: {exc}") from exc
    if not isinstance(obj, dict) or not {"n", "k", "utilities"} <= set(obj):
        raise GameFormatError("malformed game file: need keys n, k, utilities")
    n, k = obj["n"], obj["k"]
    if not isinstance(n, int) or not isinstance(k, int):
        raise GameFormatError("malformed game file: n and k must be integers")
    try:
        return AnonymousGame(n=n, k=k, utilities=obj["utilities"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GameFormatError):
            raise
        raise GameFormatError(f"malformed game file: {exc}") from exc


def serialize_game(game: AnonymousGame) -> bytes:
    """Canonical byte form: exact 'num/den' strings, sorted keys, one line."""
    obj = {
        "k": game.k,
        "n": game.n,
        "utilities": [[[_frac_str(v) for v in row] for row in per_player]
                      for per_player in game.utilities],
    }
    return (json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n").encode()


def parse_profile(data: bytes | str) -> MixedProfile:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"malformed profile file: {exc}") from exc
    if not isinstance(obj, dict) or not {"n", "k", "probs"} <= set(obj):
        raise GameFormatError("malformed profile file: need keys n, k, probs")
    probs = obj["probs"]
    if len(probs) != obj["n"] or any(len(r) != obj["k"] for r in probs):
        raise GameFormatError("malformed profile file: probs shape disagrees with n, k")
    try:
        return MixedProfile(probs=probs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GameFormatError):
            raise
        raise GameFormatError(f"malformed profile file: {exc}") from exc


def serialize_profile(profile: MixedProfile) -> bytes:
    obj = {
        "k": profile.k,
        "n": profile.n,
        "probs": [[_frac_str(v) for v in row] for row in profile.probs],
    }
    return (json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n").encode()


def random_game(n: int, k: int, seed: int) -> AnonymousGame:
    """Utilities i.i.d. uniform on [0,1] from a seeded generator.

    Same seed, same game; float draws are promoted to exact rationals.
    """
    if n < 2 or k < 2:
        raise GameFormatError("anonymous game needs n >= 2 and k >= 2")
    rng = np.random.default_rng(seed)
    table = rng.random((n, k, partition_count(n - 1, k)))
    utilities = tuple(
        tuple(tuple(Fraction(float(v)) for v in row) for row in per_player)
        for per_player in table)
    return AnonymousGame(n=n, k=k, utilities=utilities)


def random_profile(n: int, k: int, seed: int, denominator: int = 1000) -> MixedProfile:
    """Random rational profile, each row uniform over the compositions of
    `denominator` into k parts (so entries are exact multiples of
    1/denominator and rows sum to exactly 1)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(n):
        if k == 1:
            rows.append((Fraction(1),))
            continue
        bars = np.sort(rng.choice(denominator + k - 1, size=k - 1, replace=False))
        padded = [-1] + [int(b) for b in bars] + [denominator + k - 1]
        counts = [padded[i + 1] - padded[i] - 1 for i in range(k)]
        rows.append(tuple(Fraction(c, denominator) for c in counts))
    return MixedProfile(probs=tuple(rows))


def profile_support(row: Iterable[Fraction]) -> tuple[int, ...]:
    """Indices of the strictly positive entries of one probability vector."""
    return tuple(i for i, v in enumerate(row) if v > 0)
