import itertools
import math

import pytest

from exphuff.core import exp_redundancy, make_distribution
from exphuff.oracle import (
    LengthMultiset,
    brute_force_optimum,
    count_complete_trees,
    enumerate_complete_length_multisets,
    verify_theorem3,
)

from strategies import random_dists


def test_small_enumerations():
    assert enumerate_complete_length_multisets(3) == [(1, 2, 2)]
    assert enumerate_complete_length_multisets(4) == [(1, 2, 3, 3), (2, 2, 2, 2)]
    five = enumerate_complete_length_multisets(5)
    assert sorted(five) == [(1, 2, 3, 4, 4), (1, 3, 3, 3, 3), (2, 2, 2, 3, 3)]


@pytest.mark.parametrize("n", range(1, 15))
def test_enumeration_count_matches_level_recursion(n):
    assert len(enumerate_complete_length_multisets(n)) == count_complete_trees(n)


def test_known_counts():
    # number of ways to write 1 as a sum of n powers of 1/2
    assert [count_complete_trees(n) for n in range(1, 15)] == [
        1, 1, 1, 2, 3, 5, 9, 16, 28, 50, 89, 159, 285, 510,
    ]


def test_l_max_filters():
    assert enumerate_complete_length_multisets(5, l_max=3) == [(1, 3, 3, 3, 3), (2, 2, 2, 3, 3)]
    with pytest.raises(ValueError):
        enumerate_complete_length_multisets(5, l_max=2)


def test_guard():
    with pytest.raises(ValueError):
        enumerate_complete_length_multisets(15)
    with pytest.raises(ValueError):
        brute_force_optimum([1 / 20] * 20, 1)


def test_length_multiset_requires_kraft_equality():
    with pytest.raises(ValueError):
        LengthMultiset((1, 2, 3))


def test_oracle_examples():
    v, opt = brute_force_optimum([0.4, 0.3, 0.3], 1)
    assert v == pytest.approx(math.log2(1.04)) and opt == [(1, 2, 2)]
    for d in (-0.5, 0, 2, math.inf):
        v, opt = brute_force_optimum([0.5, 0.25, 0.125, 0.125], d)
        assert v == pytest.approx(0.0, abs=1e-12) and (1, 2, 3, 3) in opt


def test_oracle_uniform_tail_example():
    p = [1 / 3, 2 / 9, 2 / 9, 2 / 9]
    flat = math.log2((1 / 9) * 4 + 3 * (4 / 81) * 4)
    skew = math.log2((1 / 9) * 2 + (4 / 81) * 4 + 2 * (4 / 81) * 8)
    assert flat == pytest.approx(2 + math.log2(7 / 27))
    assert skew > flat
    v, opt = brute_force_optimum(p, 1)
    assert v == pytest.approx(flat) and opt == [(2, 2, 2, 2)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("d", [-0.9, -0.5, 0, 1, 4, math.inf])
def test_oracle_against_every_length_vector(n, d):
    # independent search: every assignment of lengths 1..n-1 meeting Kraft
    top = max(n - 1, 1)
    for p in random_dists(seed=7 * n, n=n, count=8):
        best = math.inf
        for ls in itertools.product(range(1, top + 1), repeat=n):
            if sum(2.0 ** -l for l in ls) <= 1.0:
                best = min(best, exp_redundancy(p, ls, d))
        assert brute_force_optimum(p, d)[0] == pytest.approx(best, abs=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sorted_pairing_is_best(n):
    for p in random_dists(seed=n, n=n, count=10):
        for ms in enumerate_complete_length_multisets(n):
            for d in (-0.5, 1, 16):
                sorted_val = exp_redundancy(p, ms, d)
                for perm in itertools.permutations(ms):
                    assert exp_redundancy(p, perm, d) >= sorted_val - 1e-12


def test_top_symbol_length_examples():
    assert verify_theorem3([0.45, 0.25, 0.2, 0.1], -0.5)
    assert not verify_theorem3([0.3] + [0.7 / 3] * 3, -0.5)
    with pytest.raises(ValueError):
        verify_theorem3([0.5, 0.5], 0.5)


def test_all_ties_reported():
    # both trees have expected length 2 here
    v, opt = brute_force_optimum(make_distribution([1 / 3, 1 / 3, 1 / 6, 1 / 6]), 0)
    assert sorted(opt) == [(1, 2, 3, 3), (2, 2, 2, 2)]
