"""Reduced-size oracle and invariant checks, runnable from the command line."""

from __future__ import annotations

import random
from math import gcd
from typing import Callable

from .arith import Inverse, Modulus, mod_pow, trial_division, try_invert
from .batch import Witness, batch_invert, find_noninvertible
from .engine import special_form_factor
from .forms import MINUS, PLUS, SpecialForm
from .primality import is_prime
from .shifted import (
    LinearPoly,
    build_eval_plan,
    eval_shifted_factorials,
    naive_eval,
    shift_values,
    tree_eval,
)
from .sieve import FoundPrime, NoneBelow, ResidueInfo, collision_sets, find_factor_below, search_width


def _broken_shift(vals, alpha, beta, inverses, N):
    out = shift_values(vals, alpha, beta, inverses, N)
    out[-1] = (out[-1] + 1) % N
    return out


def _check_arith(rng: random.Random, shift) -> None:
    for _ in range(200):
        N = rng.randrange(2, 2**40)
        x = Modulus(N)(rng.randrange(-(2**41), 2**41))
        res = try_invert(x)
        if isinstance(res, Inverse):
            assert x.value * res.value.value % N == 1
        else:
            assert res.g > 1 and N % res.g == 0 and res.g == gcd(x.value, N)
        exp = rng.randrange(0, 65)
        naive = 1
        for _ in range(exp):
            naive = naive * x.value % N
        assert mod_pow(x, exp).value == naive % N
        M = rng.randrange(1, 2**48)
        partial, cof = trial_division(M, 400)
        prod = cof
        for p, e in partial:
            prod *= p**e
        assert prod == M


def _check_batch(rng: random.Random, shift) -> None:
    for _ in range(300):
        N = rng.randrange(2, 10**6)
        fs = [rng.randrange(0, N) for _ in range(rng.randrange(1, 20))]
        naive = next(((i, gcd(x, N)) for i, x in enumerate(fs) if gcd(x, N) > 1), None)
        got = find_noninvertible(fs, N)
        if naive is None:
            assert not isinstance(got, Witness)
            inv = batch_invert(fs, N)
            assert all(x * y % N == 1 for x, y in zip(fs, inv))
        else:
            assert isinstance(got, Witness) and (got.index, got.g) == naive
            assert batch_invert(fs, N) == got


def _check_eval(rng: random.Random, shift) -> None:
    done = 0
    while done < 100:
        N = rng.randrange(3, 2**32) | 1
        e = rng.randrange(0, 6)
        beta = rng.randrange(1, N)
        plan = build_eval_plan(e, beta, N)
        if isinstance(plan, Witness):
            continue
        H = LinearPoly(rng.randrange(N), N)
        pts = [j * beta for j in range(1, plan.k + 1)]
        assert eval_shifted_factorials(H, plan, _shift=shift) == naive_eval(H, plan.k, pts)
        done += 1


def _check_tree(rng: random.Random, shift) -> None:
    for _ in range(5):
        N = rng.randrange(3, 2**32) | 1
        beta = rng.randrange(1, N)
        plan = build_eval_plan(6, beta, N)
        if isinstance(plan, Witness):
            continue
        H = LinearPoly(rng.randrange(N), N)
        pts = [j * beta for j in range(1, 65)]
        assert eval_shifted_factorials(H, plan, _shift=shift) == tree_eval(H, 64, pts)


def _check_collisions(rng: random.Random, shift) -> None:
    for N in range(4, 301):
        if is_prime(N):
            continue
        for p in (q for q in range(3, N // 5 + 1) if N % q == 0 and is_prime(q)):
            for m in range(2, p):
                if gcd(m, N) != 1:
                    continue
                r = p % m
                for k in sorted({search_width(B, m) for B in range(p, N // 5 + 1)}):
                    s1, s2 = collision_sets(N, ResidueInfo(m, r), k)
                    assert not set(s1) & set(s2), (N, p, m, k)
                    assert {x % p for x in s1} & {x % p for x in s2}, (N, p, m, k)


def _check_lemma(rng: random.Random, shift) -> None:
    for N in range(401, 3000, 2):
        if is_prime(N):
            continue
        ps = [q for q in range(3, N) if N % q == 0 and is_prime(q)]
        m = 0
        for q in ps:
            m = gcd(m, q - 1)
        info = ResidueInfo(m, 1)
        e = 1
        while 5 * 4**e * m <= N:
            B = 4**e * m
            got = find_factor_below(N, info, e)
            expect = [q for q in ps if q <= B]
            if expect:
                assert isinstance(got, FoundPrime) and got.p in expect, (N, m, e, got)
            else:
                assert got == NoneBelow(B), (N, m, e, got)
            e += 1


def _check_special(rng: random.Random, shift) -> None:
    for n in range(1, 41):
        for sign in (MINUS, PLUS):
            if sign == MINUS and n == 1:
                continue
            f = special_form_factor(SpecialForm(2, 1, n, sign))
            for br in f.branches:
                assert all(p % br.d == 1 for p in br.primes), (str(SpecialForm(2, 1, n, sign)), br)


CHECKS: list[tuple[str, Callable]] = [
    ("arith: inversion, powering, trial-division recomposition", _check_arith),
    ("batch: noninvertible search and batch inversion vs naive scan", _check_batch),
    ("eval: doubling evaluation vs naive products", _check_eval),
    ("eval: doubling evaluation vs subproduct tree", _check_tree),
    ("sieve: collision sets disjoint and colliding mod p", _check_collisions),
    ("sieve: bounded search vs trial division", _check_lemma),
    ("engine: 2^n+-1 sweep with order argument", _check_special),
]


def run_selftest(seed: int = 0, sabotage_shift: bool = False) -> tuple[bool, list[str]]:
    shift = _broken_shift if sabotage_shift else shift_values
    lines = [f"seed {seed}"]
    ok = True
    for name, check in CHECKS:
        rng = random.Random(f"{seed}:{name}")
        try:
            check(rng, shift)
        except AssertionError as exc:
            ok = False
            detail = f": {exc}" if str(exc) else ""
            lines.append(f"FAIL {name}{detail}")
        else:
            lines.append(f"PASS {name}")
    return ok, lines
