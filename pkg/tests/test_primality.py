import random

import pytest
import sympy

from powfactor.primality import DETERMINISTIC, HEURISTIC, MR_DETERMINISTIC_LIMIT, is_prime, primality


def _trial_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@pytest.mark.parametrize("n, expected", [(2, True), (2047, False), (6700417, True)])
def test_examples(n, expected):
    assert is_prime(n) is expected
    assert _trial_is_prime(n) is expected


def test_matches_trial_division_below_20000():
    assert [n for n in range(20000) if is_prime(n)] == [n for n in range(20000) if _trial_is_prime(n)]


def test_strong_pseudoprimes_rejected():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
              341550071728321, 3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)


def test_agrees_with_sympy_on_random_large():
    rng = random.Random(3)
    for _ in range(2000):
        n = rng.randrange(2, 2**90)
        assert is_prime(n) == sympy.isprime(n)


def test_certification_levels():
    assert primality(2**61 - 1) == (True, DETERMINISTIC)
    assert primality(2**89 - 1) == (True, HEURISTIC)
    assert 2**89 - 1 > MR_DETERMINISTIC_LIMIT
    assert primality(2**89 + 1) == (False, DETERMINISTIC)
    # Lucas part on its own: large composites with no small factors
    for p, q in [(2**61 - 1, 2**31 - 1), (10**20 + 39, 10**20 + 129)]:
        assert not is_prime(p * q)
