"""Bounded prime search for numbers whose prime factors share a residue class.

If every prime divisor of N is ``r mod m``, a prime ``p <= B`` has the form
``p = m x + r`` with ``x < k^2``, ``k = sqrt(B / m)``. Writing ``x = j k - i``
turns the search into a collision between ``m^{-1} r - i`` and ``-j k`` mod p,
and the products ``H_k(-j k)`` for ``H = X - m^{-1} r + 1`` expose it as a
noninvertible value mod N.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Union

from . import instrument
from .arith import smallest_prime_factor, trial_division_in_progression
from .batch import Witness, find_noninvertible
from .errors import ResiduePromiseError
from .primality import is_prime
from .shifted import LinearPoly, build_eval_plan, eval_shifted_factorials, tree_eval


@dataclass(frozen=True)
class ResidueInfo:
    m: int
    r: int

    def __post_init__(self):
        if self.m < 2 or not 0 <= self.r < self.m:
            raise ValueError(f"need m >= 2 and 0 <= r < m, got m={self.m}, r={self.r}")


@dataclass(frozen=True)
class FoundPrime:
    p: int


@dataclass(frozen=True)
class NoneBelow:
    B: int


@dataclass(frozen=True)
class LuckyFactor:
    g: int


@dataclass(frozen=True)
class CompositeSplit:
    """``gcd(-j k - m^{-1} r + i, N) = g`` with ``1 < g < N``."""

    g: int
    i: int
    j: int
    k: int


@dataclass(frozen=True)
class NoCollision:
    pass


SearchOutcome = Union[FoundPrime, NoneBelow, LuckyFactor]


def _ceil_sqrt(x: int) -> int:
    s = isqrt(x)
    return s if s * s == x else s + 1


def search_width(B: int, m: int) -> int:
    """``ceil(sqrt(B / m))`` in exact integer arithmetic."""
    return _ceil_sqrt(-(-B // m)) if B % m else _ceil_sqrt(B // m)


def collision_sets(N: int, info: ResidueInfo, k: int) -> tuple[list[int], list[int]]:
    """``[m^{-1} r - n mod N]`` and ``[-n k mod N]`` for ``n = 1..k``."""
    if gcd(N, info.m) != 1:
        raise ValueError(f"m={info.m} is not invertible modulo {N}")
    t = pow(info.m, -1, N) * info.r % N
    return [(t - n) % N for n in range(1, k + 1)], [(-n * k) % N for n in range(1, k + 1)]


def collision_search(
    N: int, info: ResidueInfo, B: int
) -> Union[CompositeSplit, NoCollision, LuckyFactor]:
    """Look for a prime ``p <= B``, ``p = r mod m``, through one noninvertible ``H_k(-j k)``.

    With ``B = 4^e m`` the doubling evaluator is used; any other ``B`` goes
    through the subproduct-tree evaluator with ``k = ceil(sqrt(B/m))``.
    """
    m, r = info.m, info.r
    if B > N // 5:
        raise ValueError(f"bound {B} exceeds N/5 for N={N}")
    instrument.count(gcds=1)
    g = gcd(N, m)
    if g != 1:
        return LuckyFactor(g)
    k = search_width(B, m)
    t = pow(m, -1, N) * r % N
    instrument.count(inversions=1)
    H = LinearPoly(1 - t, N)
    if m * k * k == B and k & (k - 1) == 0:
        plan = build_eval_plan(k.bit_length() - 1, -k, N)
        if isinstance(plan, Witness):
            return LuckyFactor(plan.g)
        values = eval_shifted_factorials(H, plan)
    else:
        values = tree_eval(H, k, [-j * k for j in range(1, k + 1)])
    hit = find_noninvertible(values, N)
    if not isinstance(hit, Witness):
        return NoCollision()
    j = hit.index + 1
    row = [(-j * k - t + i) % N for i in range(1, k + 1)]
    w = find_noninvertible(row, N)
    if not isinstance(w, Witness):  # pragma: no cover - ruled out by the product identity
        raise AssertionError("noninvertible product without a noninvertible factor")
    return CompositeSplit(w.g, w.index + 1, j, k)


def _prime_from_divisor(g: int, info: ResidueInfo) -> int:
    """A prime ``p = r mod m`` dividing ``g``, found over the progression ``m x + r``."""
    p = trial_division_in_progression(g, info.r, info.m, isqrt(g) + 1)
    if p is None and is_prime(g) and g % info.m == info.r:
        p = g
    if p is None:
        q = smallest_prime_factor(g)
        raise ResiduePromiseError(q, info.m, info.r)
    return p


def find_factor_below(N: int, info: ResidueInfo, e: int) -> SearchOutcome:
    """Find a prime ``p <= B = 4^e m`` dividing N, or prove there is none.

    Every prime divisor of N must be ``r mod m`` and ``B <= N/5``.
    """
    m, r = info.m, info.r
    if e < 1:
        raise ValueError("e must be >= 1")
    k = 1 << e
    B = k * k * m
    if 5 * B > N:
        raise ValueError(f"bound {B} exceeds N/5 for N={N}")
    instrument.count(gcds=1)
    g = gcd(N, m)
    if g != 1:
        return LuckyFactor(g)
    # a prime p < m in the class can only be r itself
    if r >= 2 and N % r == 0:
        return FoundPrime(_prime_from_divisor(r, info))

    res = collision_search(N, info, B)
    if isinstance(res, LuckyFactor):
        # a window element was not a unit; those are nonzero and below 4^e in size
        return FoundPrime(_prime_from_divisor(res.g, info))
    if isinstance(res, NoCollision):
        return NoneBelow(B)
    # m j k + r - m i lies in (0, B) and shares the factor res.g with N
    v = m * res.j * k + r - m * res.i
    instrument.count(gcds=1)
    return FoundPrime(_prime_from_divisor(gcd(v, N), info))
