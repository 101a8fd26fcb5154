"""Modular arithmetic on Z/NZ and the trial-division helpers built on it."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

from . import instrument
from .primality import is_prime


@dataclass(frozen=True)
class Modulus:
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"modulus must be >= 2, got {self.N}")

    def __call__(self, x: int) -> "Residue":
        return mod_reduce(x, self)


@dataclass(frozen=True)
class Residue:
    """An element of Z/NZ, always stored as its representative in [0, N)."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.N:
            raise ValueError(f"{self.value} is not reduced modulo {self.modulus.N}")

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"mixing residues mod {self.modulus.N} and mod {other.modulus.N}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _wrap(self, x: int) -> "Residue":
        return Residue(x % self.modulus.N, self.modulus)

    def __add__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        instrument.count(mulmods=1)
        return self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, exp: int):
        return mod_pow(self, exp)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


@dataclass(frozen=True)
class Inverse:
    value: Residue


@dataclass(frozen=True)
class Witness:
    """``g = gcd(x, N) > 1`` for a queried element ``x``; ``g`` may equal ``N``."""

    g: int


InverseOutcome = Union[Inverse, Witness]


def _as_modulus(N: Union[int, Modulus]) -> Modulus:
    return N if isinstance(N, Modulus) else Modulus(N)


def mod_reduce(x: int, N: Union[int, Modulus]) -> Residue:
    mod = _as_modulus(N)
    return Residue(x % mod.N, mod)


def try_invert(x: Residue) -> InverseOutcome:
    N = x.modulus.N
    instrument.count(gcds=1)
    g = gcd(x.value, N)
    if g != 1:
        return Witness(g)
    instrument.count(inversions=1)
    return Inverse(Residue(pow(x.value, -1, N), x.modulus))


def mod_pow(x: Residue, exp: int) -> Residue:
    if exp < 0:
        raise ValueError("negative exponent; invert first")
    # square-and-multiply cost, counted rather than performed by hand
    instrument.count(mulmods=max(exp.bit_length() - 1, 0) + max(bin(exp).count("1") - 1, 0))
    return Residue(pow(x.value, exp, x.modulus.N), x.modulus)


@lru_cache(maxsize=8)
def primes_below(limit: int) -> tuple[int, ...]:
    """Primes p < limit, by the sieve of Eratosthenes."""
    if limit <= 2:
        return ()
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def remove_prime_power(N: int, p: int) -> tuple[int, int]:
    """Strip every factor ``p`` from ``N``; returns ``(exponent, cofactor)``."""
    if p < 2 or N % p:
        raise ValueError(f"{p} does not divide {N}")
    e = 0
    while N % p == 0:
        N //= p
        e += 1
    return e, N


def trial_division(N: int, limit: int) -> tuple[list[tuple[int, int]], int]:
    """Remove every prime below ``limit`` from ``N`` with full multiplicity."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if N < 1:
        raise ValueError("N must be positive")
    partial = []
    if limit <= 10**6:
        candidates = primes_below(limit)
    else:
        candidates = (p for p in range(2, limit) if is_prime(p))
    for p in candidates:
        if p * p > N:
            break
        if N % p == 0:
            e, N = remove_prime_power(N, p)
            partial.append((p, e))
    if 1 < N < limit:
        partial.append((N, 1))
        N = 1
    return partial, N


def trial_division_in_progression(N: int, r: int, m: int, limit: int) -> int | None:
    """Smallest prime ``p < limit`` with ``p = r (mod m)`` dividing ``N``.

    Only the candidates ``m*x + r`` are tried.
    """
    if m < 2 or not 0 <= r < m:
        raise ValueError(f"need m >= 2 and 0 <= r < m, got m={m}, r={r}")
    start = r if r >= 2 else r + m
    for c in range(start, limit, m):
        if N % c == 0 and is_prime(c):
            return c
    return None


def smallest_prime_factor(n: int) -> int:
    """Plain trial division; only meant for numbers whose square root is small."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if n % 2 == 0:
        return 2
    for c in range(3, isqrt(n) + 1, 2):
        if n % c == 0:
            return c
    return n


def factor_small(n: int) -> dict[int, int]:
    """Full factorization by unbounded trial division."""
    out: dict[int, int] = {}
    while n > 1:
        p = smallest_prime_factor(n)
        e, n = remove_prime_power(n, p)
        out[p] = e
    return out
