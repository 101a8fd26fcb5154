import random

import pytest
from hypothesis import given, strategies as st

from powfactor.arith import (
    Inverse,
    Modulus,
    Residue,
    Witness,
    mod_pow,
    mod_reduce,
    primes_below,
    remove_prime_power,
    trial_division,
    trial_division_in_progression,
    try_invert,
)


@pytest.mark.parametrize("x, N, expected", [(-4, 77, 73), (0, 15, 0), (240, 101, 38)])
def test_mod_reduce(x, N, expected):
    assert mod_reduce(x, N).value == expected


def test_try_invert_examples():
    M = Modulus(77)
    assert try_invert(M(39)) == Inverse(M(2))
    assert try_invert(M(35)) == Witness(7)
    assert try_invert(Modulus(15)(0)) == Witness(15)


@pytest.mark.parametrize("x, exp, N, expected", [(2, 11, 2047, 1), (5, 0, 101, 1), (2, 32, 641, 640)])
def test_mod_pow_examples(x, exp, N, expected):
    assert mod_pow(mod_reduce(x, N), exp).value == expected


def test_residues_of_different_moduli_do_not_mix():
    with pytest.raises(ValueError):
        Modulus(15)(2) * Modulus(17)(2)
    with pytest.raises(ValueError):
        Residue(15, Modulus(15))
    with pytest.raises(ValueError):
        Modulus(1)


def test_residue_arithmetic():
    M = Modulus(101)
    x, y = M(50), M(60)
    assert (x + y).value == 9
    assert (x - y).value == 91
    assert (x * y).value == 3000 % 101
    assert (-x).value == 51
    assert (x**3).value == pow(50, 3, 101)


@given(st.integers(-(10**30), 10**30), st.integers(2, 10**20))
def test_try_invert_contract(x, N):
    r = mod_reduce(x, N)
    out = try_invert(r)
    if isinstance(out, Inverse):
        assert r.value * out.value.value % N == 1
    else:
        assert out.g > 1 and N % out.g == 0 and r.value % out.g == 0


def test_mod_pow_agrees_with_repeated_multiplication():
    rng = random.Random(7)
    for _ in range(500):
        N = rng.randrange(2, 2**64)
        x = rng.randrange(N)
        exp = rng.randrange(0, 65)
        acc = 1 % N
        for _ in range(exp):
            acc = acc * x % N
        assert mod_pow(mod_reduce(x, N), exp).value == acc


def test_trial_division_examples():
    assert trial_division(63, 400) == ([(3, 2), (7, 1)], 1)
    assert trial_division(1, 400) == ([], 1)
    # 2047 = 23 * 89: both primes are below 400
    assert trial_division(2047, 400) == ([(23, 1), (89, 1)], 1)
    assert trial_division(401 * 409, 400) == ([], 401 * 409)


def test_trial_division_recomposition():
    rng = random.Random(11)
    small = primes_below(400)
    for _ in range(10_000):
        N = rng.randrange(1, 2**64)
        partial, cof = trial_division(N, 400)
        prod = cof
        for p, e in partial:
            prod *= p**e
        assert prod == N
        assert all(cof % p for p in small)


def test_primes_below_matches_naive():
    naive = [n for n in range(2, 1000) if all(n % d for d in range(2, n))]
    assert list(primes_below(1000)) == naive


@pytest.mark.parametrize("N, r, m, limit, expected", [(77, 1, 2, 9, 7), (143, 1, 2, 9, None), (91, 1, 3, 8, 7)])
def test_trial_division_in_progression(N, r, m, limit, expected):
    assert trial_division_in_progression(N, r, m, limit) == expected


@given(st.integers(2, 10**6), st.integers(2, 50), st.data())
def test_progression_result_is_in_class(N, m, data):
    r = data.draw(st.integers(0, m - 1))
    p = trial_division_in_progression(N, r, m, 2000)
    if p is not None:
        assert p % m == r and N % p == 0


@pytest.mark.parametrize("N, p, expected", [(63, 3, (2, 7)), (2047, 23, (1, 89)), (8, 2, (3, 1))])
def test_remove_prime_power(N, p, expected):
    assert remove_prime_power(N, p) == expected


def test_remove_prime_power_requires_divisor():
    with pytest.raises(ValueError):
        remove_prime_power(10, 3)
