"""Trickle-down decomposition of a mixed strategy into a binary tree.

A distribution over m >= 3 strategies is split into two halves whose
probability masses each round to 1/2: one strategy may be duplicated
across the halves, each half's probabilities are doubled, and the halves
are decomposed recursively.  Leaves carry at most two strategies, so a
draw reduces to a fair-coin walk down the tree followed by a single
biased two-way choice at the leaf.

Every node keeps its strategies in a fixed canonical order: the largest
probability sits second, the remaining entries are nondecreasing, and
ties are resolved by strategy index (smallest tied index becomes the
second element; the rest sort by (probability, index)).  Cell keys and
per-leaf rounding both depend on this order, so it is part of the data,
not a display choice.

All arithmetic is exact; doubling and remainders never round.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import TdpStructureError
from .games import as_fraction

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class TdpNode:
    strategies: tuple[int, ...]     # canonical order, largest probability second
    probs: tuple[Fraction, ...]     # aligned with `strategies`, sums to 1
    depth: int
    left: "TdpNode | None" = None
    right: "TdpNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def prob_of(self, strategy: int) -> Fraction:
        return self.probs[self.strategies.index(strategy)]


@dataclass(frozen=True)
class TdpTree:
    root: TdpNode
    leaves: tuple[TdpNode, ...]     # preorder (left before right)


def order_support(strategies: Sequence[int], probs: Sequence[Fraction]):
    """Canonical node order: largest probability second, rest nondecreasing.

    Among strategies tied for the maximum, the smallest index is placed
    second; the remaining strategies sort ascending by (probability, index).
    """
    items = sorted(zip(strategies, probs))
    if len(items) == 1:
        return (items[0][0],), (items[0][1],)
    max_p = max(p for _, p in items)
    second = min(s for s, p in items if p == max_p)
    rest = sorted(((s, p) for s, p in items if s != second), key=lambda t: (t[1], t[0]))
    ordered = [rest[0]] + [(second, max_p)] + rest[1:]
    return tuple(s for s, _ in ordered), tuple(p for _, p in ordered)


def _split_index(probs: Sequence[Fraction]) -> int:
    """The unique 1-based position l* with prefix sum <= 1/2 and suffix
    sum < 1/2.  Uniqueness is re-checked on every call and violations are
    surfaced as TdpStructureError."""
    m = len(probs)
    prefix = Fraction(0)
    total = sum(probs)
    hits = []
    for ell in range(1, m):           # l* < m
        suffix = total - prefix - probs[ell - 1]
        if prefix <= HALF and suffix < HALF:
            hits.append(ell)
        prefix += probs[ell - 1]
    if len(hits) != 1:
        raise TdpStructureError(
            f"split index not unique for probabilities {probs}: candidates {hits}")
    return hits[0]


def _build(strategies, probs, depth: int, leaves: list) -> TdpNode:
    strategies, probs = order_support(strategies, probs)
    if len(strategies) <= 2:
        node = TdpNode(strategies, probs, depth)
        leaves.append(node)
        return node

    ell = _split_index(probs)
    left_items = [(strategies[j], 2 * probs[j]) for j in range(ell - 1)]
    t = 1 - sum(p for _, p in left_items)
    if t != 0:
        left_items.append((strategies[ell - 1], t))
    right_rest = [(strategies[j], 2 * probs[j]) for j in range(ell, len(strategies))]
    pivot_mass = 1 - sum(p for _, p in right_rest)
    right_items = [(strategies[ell - 1], pivot_mass)] + right_rest

    left = _build([s for s, _ in left_items], [p for _, p in left_items],
                  depth + 1, leaves)
    right = _build([s for s, _ in right_items], [p for _, p in right_items],
                   depth + 1, leaves)
    return TdpNode(strategies, probs, depth, left, right)


def build_tdp_tree(strategies: Sequence[int], probs: Sequence) -> TdpTree:
    """Decompose an exact distribution with strictly positive entries.

    strategies and probs are aligned; the probabilities must be exactly
    positive rationals summing to exactly 1.  Inputs of support size 1 or
    2 come back as a single (ordered) leaf.
    """
    probs = [as_fraction(p) for p in probs]
    if len(strategies) != len(probs) or not strategies:
        raise ValueError("need one probability per strategy, at least one strategy")
    if len(set(strategies)) != len(strategies):
        raise ValueError("duplicate strategy in support")
    if any(p <= 0 for p in probs):
        raise ValueError("trickle-down input requires strictly positive probabilities")
    if sum(probs) != 1:
        raise ValueError("probabilities must sum to exactly 1")
    leaves: list[TdpNode] = []
    root = _build(list(strategies), probs, 0, leaves)
    return TdpTree(root=root, leaves=tuple(leaves))


def reconstruct_distribution(tree: TdpTree) -> dict[int, Fraction]:
    """Exact inverse of the decomposition: p(l) = sum over leaves containing
    l of 2^-depth * p_leaf(l)."""
    acc: dict[int, Fraction] = {}
    for leaf in tree.leaves:
        w = Fraction(1, 2 ** leaf.depth)
        for s, p in zip(leaf.strategies, leaf.probs):
            acc[s] = acc.get(s, Fraction(0)) + w * p
    return acc


def sample_strategy(tree: TdpTree, rng) -> int:
    """Draw one strategy: fair-coin walk to a leaf, then the leaf's two-way
    choice.  The marginal law equals reconstruct_distribution(tree)."""
    node = tree.root
    while not node.is_leaf:
        node = node.left if rng.random() < 0.5 else node.right
    if len(node.strategies) == 1:
        return node.strategies[0]
    return node.strategies[0] if rng.random() < node.probs[0] else node.strategies[1]


def floor_root_power(z: int, alpha: Fraction) -> int:
    """floor(z**alpha) for rational alpha, in exact integer arithmetic."""
    alpha = as_fraction(alpha)
    if z < 1:
        raise ValueError("z must be >= 1")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    p, q = alpha.numerator, alpha.denominator
    target = z ** p
    t = max(int(round(z ** float(alpha))), 0)
    while t ** q > target:
        t -= 1
    while (t + 1) ** q <= target:
        t += 1
    return t


def classify_leaf(leaf: TdpNode, z: int, alpha) -> str:
    """'A' when the leaf's smaller probability is at most floor(z^alpha)/z
    (the threshold is inclusive), else 'B'."""
    if len(leaf.strategies) != 2:
        raise ValueError("only support-2 leaves have a type")
    if z < 2:
        raise ValueError("z must be >= 2")
    threshold = Fraction(floor_root_power(z, as_fraction(alpha)), z)
    return "A" if leaf.probs[0] <= threshold else "B"


def cell_signature(tree: TdpTree, z: int, alpha) -> tuple:
    """Canonical cell key: tree shape, each node's ordered strategy list,
    and each leaf's type.  Two strategies share a cell exactly when their
    keys are equal."""
    alpha = as_fraction(alpha)

    def sig(node: TdpNode) -> tuple:
        if node.is_leaf:
            return ("L", node.strategies, classify_leaf(node, z, alpha))
        return ("N", node.strategies, sig(node.left), sig(node.right))

    return sig(tree.root)


def tree_shape_key(tree: TdpTree) -> tuple:
    """Like cell_signature but without leaf types; used to confirm that a
    group of trees can be rounded together (leaf positions align)."""

    def sig(node: TdpNode) -> tuple:
        if node.is_leaf:
            return ("L", node.strategies)
        return ("N", node.strategies, sig(node.left), sig(node.right))

    return sig(tree.root)


def node_ordering_ok(node: TdpNode) -> bool:
    """Check the canonical-order invariant at one node."""
    ps = node.probs
    if len(ps) == 1:
        return True
    if any(p <= 0 for p in ps) or sum(ps) != 1:
        return False
    if max(ps) != ps[1]:
        return False
    rest = ps[:1] + ps[2:]
    return all(rest[j] <= rest[j + 1] for j in range(len(rest) - 1))


def iter_nodes(tree: TdpTree):
    stack = [tree.root]
    while stack:
        node = stack.pop()
        yield node
        if not node.is_leaf:
            stack.append(node.right)
            stack.append(node.left)


def format_tree(tree: TdpTree, z: int | None = None, alpha=None) -> str:
    """Indented text dump with exact rationals, one node per line.  Leaf
    types are included when z (and alpha) are given."""

    def fmt(node: TdpNode, lines: list):
        pad = "  " * node.depth
        body = ", ".join(f"{s}:{p}" for s, p in zip(node.strategies, node.probs))
        if node.is_leaf:
            tag = "leaf"
            if z is not None and len(node.strategies) == 2:
                tag += f"[{classify_leaf(node, z, alpha)}]"
        else:
            tag = "node"
        lines.append(f"{pad}{tag} depth={node.depth} ({body})")
        if not node.is_leaf:
            fmt(node.left, lines)
            fmt(node.right, lines)

    lines: list[str] = []
    fmt(tree.root, lines)
    return "\n".join(lines) + "\n"
