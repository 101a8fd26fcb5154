import pytest

from powfactor.errors import ResiduePromiseError
from powfactor.sieve import (
    CompositeSplit,
    FoundPrime,
    LuckyFactor,
    NoCollision,
    NoneBelow,
    ResidueInfo,
    collision_search,
    collision_sets,
    find_factor_below,
    search_width,
)


def test_collision_sets_example():
    s1, s2 = collision_sets(77, ResidueInfo(2, 1), 2)
    assert (s1, s2) == ([38, 37], [75, 73])
    assert not set(s1) & set(s2)
    s1, s2 = collision_sets(1001, ResidueInfo(3, 2), 1)
    assert len(s1) == len(s2) == 1


def test_collision_sets_need_invertible_m():
    with pytest.raises(ValueError):
        collision_sets(77, ResidueInfo(7, 1), 2)


def test_search_width():
    assert search_width(8, 2) == 2
    assert search_width(9, 2) == 3
    assert search_width(12, 3) == 2
    assert search_width(13, 3) == 3


def test_collision_search_examples():
    assert collision_search(77, ResidueInfo(2, 1), 8) == CompositeSplit(7, 1, 2, 2)
    assert collision_search(143, ResidueInfo(2, 1), 8) == NoCollision()
    # m shares a factor with N
    assert collision_search(7 * 1009, ResidueInfo(7, 1), 49) == LuckyFactor(7)


def test_collision_search_plan_witness():
    # k = 4, the plan includes the element 2 * beta - ... ; N = 3 * big makes a window element 3 noninvertible
    N = 3 * 1000003
    res = collision_search(N, ResidueInfo(2, 1), 32)
    assert isinstance(res, LuckyFactor) and res.g == 3


def test_collision_search_general_bound_uses_tree_path():
    # k = ceil(sqrt(30/2)) = 4 with B not of the form 4^e m
    res = collision_search(13 * 1009, ResidueInfo(2, 1), 30)
    assert isinstance(res, CompositeSplit) and res.g == 13


@pytest.mark.parametrize(
    "N, m, r, e, expected",
    [(77, 2, 1, 1, FoundPrime(7)), (143, 2, 1, 1, NoneBelow(8)), (91, 3, 1, 1, FoundPrime(7))],
)
def test_find_factor_below_examples(N, m, r, e, expected):
    assert find_factor_below(N, ResidueInfo(m, r), e) == expected


def test_find_factor_below_bound_precondition():
    with pytest.raises(ValueError):
        find_factor_below(77, ResidueInfo(2, 1), 2)


def test_find_factor_below_r_is_prime_factor():
    # p = r < m: the only way a prime in the class can be below m
    # 1000039 is prime and 5 mod 7, so the promise holds for both factors
    assert find_factor_below(5 * 1000039, ResidueInfo(7, 5), 2) == FoundPrime(5)


def test_find_factor_below_detects_false_promise():
    # 15 = 3 * 5 is not 1 mod 4 anywhere, the search trips over 3 or 5
    with pytest.raises(ResiduePromiseError):
        find_factor_below(3 * 5 * 1000003, ResidueInfo(4, 1), 3)


def test_found_prime_soundness_small_range():
    for N in range(401, 4000, 2):
        for m, r in ((2, 1), (4, 1), (4, 3), (6, 1), (6, 5)):
            e = 1
            while 5 * 4**e * m <= N:
                try:
                    res = find_factor_below(N, ResidueInfo(m, r), e)
                except ResiduePromiseError:
                    break
                if isinstance(res, FoundPrime):
                    p = res.p
                    assert N % p == 0 and p % m == r and p <= 4**e * m
                    assert all(p % d for d in range(2, int(p**0.5) + 1))
                e += 1
