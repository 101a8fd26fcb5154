"""Primality testing with an explicit certification level.

Below ``MR_DETERMINISTIC_LIMIT`` the strong-probable-prime test to the first
thirteen prime bases is a proof. Above it we run Baillie-PSW, which has no
known counterexample but is not a proof, and say so.
"""

from __future__ import annotations

from math import isqrt

DETERMINISTIC = "deterministic"
HEURISTIC = "heuristic"

# Sorenson & Webster: bases 2..41 decide primality for every n below this bound.
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = _MR_BASES + (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x: int) -> int:
        return (x + n) // 2 % n if x % 2 else x // 2 % n

    # Left-to-right binary Lucas chain for U_d, V_d, Q^d.
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def primality(n: int) -> tuple[bool, str]:
    """Return ``(is_prime, level)`` where level is ``"deterministic"`` or ``"heuristic"``."""
    if n < 2:
        return False, DETERMINISTIC
    for p in _SMALL_PRIMES:
        if n == p:
            return True, DETERMINISTIC
        if n % p == 0:
            return False, DETERMINISTIC
    if n < 97 * 97:
        return True, DETERMINISTIC
    if n < MR_DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES), DETERMINISTIC
    ok = _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)
    return ok, (HEURISTIC if ok else DETERMINISTIC)


def is_prime(n: int) -> bool:
    return primality(n)[0]
