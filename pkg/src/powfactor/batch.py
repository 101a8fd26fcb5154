"""Product trees over Z/NZ, noninvertible-element search, and batch inversion."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import instrument


@dataclass(frozen=True)
class ProductTree:
    """``levels[0]`` are the leaves, ``levels[-1] == [root]``.

    Each node is the product of its two children mod N; a node without a
    sibling is promoted unchanged.
    """

    N: int
    levels: tuple[tuple[int, ...], ...]

    @property
    def leaves(self) -> tuple[int, ...]:
        return self.levels[0]

    @property
    def root(self) -> int:
        return self.levels[-1][0]


@dataclass(frozen=True)
class AllInvertible:
    inverse_of_product: int


@dataclass(frozen=True)
class Witness:
    """``fs[index]`` is the first element sharing a factor ``g`` with N (``g`` may be N)."""

    index: int
    g: int


def build_product_tree(fs: Sequence[int], N: int) -> ProductTree:
    if not fs:
        raise ValueError("product tree needs at least one leaf")
    level = tuple(x % N for x in fs)
    levels = [level]
    while len(level) > 1:
        nxt = [level[i] * level[i + 1] % N for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        instrument.count(mulmods=len(level) // 2)
        level = tuple(nxt)
        levels.append(level)
    return ProductTree(N, tuple(levels))


def _descend(tree: ProductTree) -> Witness:
    # Invariant: the current node shares a factor with N. Prefer the left child
    # so the leaf we land on is the smallest such index.
    N = tree.N
    idx = 0
    for depth in range(len(tree.levels) - 2, -1, -1):
        level = tree.levels[depth]
        left = 2 * idx
        if left + 1 >= len(level):
            idx = left
            continue
        instrument.count(gcds=1)
        idx = left if gcd(level[left], N) > 1 else left + 1
    instrument.count(gcds=1)
    return Witness(idx, gcd(tree.leaves[idx], N))


def find_noninvertible(fs: Sequence[int], N: int) -> AllInvertible | Witness:
    """Decide whether every ``fs[i]`` is a unit mod N.

    Returns the inverse of the product when they all are, otherwise the
    smallest index of a non-unit together with its gcd with N. Uses one gcd
    at the root and one per tree level on the way down.
    """
    tree = build_product_tree(fs, N)
    instrument.count(gcds=1)
    if gcd(tree.root, N) == 1:
        instrument.count(inversions=1)
        return AllInvertible(pow(tree.root, -1, N))
    return _descend(tree)


def batch_invert(
    fs: Sequence[int], N: int, product_inverse: int | None = None
) -> list[int] | Witness:
    """Invert every element with one modular inversion (Montgomery's trick).

    ``product_inverse`` may be passed when the inverse of the product is
    already known, in which case no inversion happens at all.
    """
    if not fs:
        raise ValueError("nothing to invert")
    n = len(fs)
    prefix = [0] * n
    acc = 1
    for i, x in enumerate(fs):
        acc = acc * x % N
        prefix[i] = acc
    instrument.count(mulmods=n - 1)
    if product_inverse is None:
        instrument.count(gcds=1)
        if gcd(acc, N) != 1:
            return find_noninvertible(fs, N)
        instrument.count(inversions=1)
        inv = pow(acc, -1, N)
    else:
        inv = product_inverse
    out = [0] * n
    for i in range(n - 1, 0, -1):
        out[i] = inv * prefix[i - 1] % N
        inv = inv * fs[i] % N
    out[0] = inv % N
    instrument.count(mulmods=2 * (n - 1))
    return out
