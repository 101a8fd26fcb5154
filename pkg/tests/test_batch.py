import random
from math import ceil, gcd, log2

import pytest

from powfactor import instrument
from powfactor.batch import AllInvertible, Witness, batch_invert, build_product_tree, find_noninvertible


def naive_scan(fs, N):
    for i, x in enumerate(fs):
        g = gcd(x, N)
        if g > 1:
            return Witness(i, g)
    return None


@pytest.mark.parametrize("N, fs, root", [(15, [2, 4, 7], 11), (15, [3], 3), (101, [10, 10, 10, 10], 1)])
def test_product_tree_root(N, fs, root):
    tree = build_product_tree(fs, N)
    assert tree.root == root
    assert tree.leaves == tuple(fs)


def test_product_tree_nodes():
    N = 1009
    fs = list(range(2, 13))  # odd length at several levels
    tree = build_product_tree(fs, N)
    for lower, upper in zip(tree.levels, tree.levels[1:]):
        for i, node in enumerate(upper):
            kids = lower[2 * i : 2 * i + 2]
            expect = kids[0] * kids[1] % N if len(kids) == 2 else kids[0]
            assert node == expect


def test_product_tree_rejects_empty():
    with pytest.raises(ValueError):
        build_product_tree([], 15)


def test_find_noninvertible_examples():
    assert find_noninvertible([2, 4, 7], 15) == AllInvertible(11)
    assert find_noninvertible([2, 3, 4], 15) == Witness(1, 3)
    assert find_noninvertible([6, 11, 13, 22], 77) == Witness(1, 11)
    assert find_noninvertible([4, 0], 15) == Witness(1, 15)


def test_batch_invert_examples():
    assert batch_invert([2, 5], 101) == [51, 81]
    assert batch_invert([1], 15) == [1]
    assert batch_invert([5, 2], 15) == Witness(0, 5)


def test_batch_invert_with_known_product_inverse():
    fs = [3, 7, 10, 99]
    inv_prod = pow(3 * 7 * 10 * 99, -1, 101)
    assert batch_invert(fs, 101, product_inverse=inv_prod) == [pow(x, -1, 101) for x in fs]


def test_gcd_count_is_logarithmic():
    rng = random.Random(5)
    N = 1000003 * 1000033
    for k in (1, 2, 3, 17, 64, 1000):
        fs = [rng.randrange(1, 1000003) for _ in range(k)]
        fs[rng.randrange(k)] = 1000003 * rng.randrange(1, 100)
        with instrument.track() as stats:
            find_noninvertible(fs, N)
        assert stats.gcds <= ceil(log2(k)) + 2
