import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exphuff.coder import (
    canonical_codewords,
    combine_weight,
    complete_condition,
    is_complete,
    optimal_code,
    subtree_ordering_holds,
)
from exphuff.core import exp_redundancy, kraft_sum
from exphuff.oracle import brute_force_optimum

from strategies import BENFORD, distributions, random_dists

D_GRID = [-0.9, -0.5, -0.1, 0, 0.5, 1, 2, 16, math.inf]


@pytest.mark.parametrize("d", D_GRID)
def test_combine_equal_weights_doubles(d):
    assert combine_weight(0.25, 0.25, d) == pytest.approx(0.5, rel=1e-12)


def test_combine_examples():
    assert combine_weight(0.5, 0.25, 1) == pytest.approx(math.sqrt(0.625), rel=1e-12)
    assert combine_weight(0.5, 0.25, 0) == 0.75
    assert combine_weight(0.5, 0.25, "inf") == 1.0
    with pytest.raises(ValueError):
        combine_weight(0.0, 0.1, 1)


@pytest.mark.parametrize("d", [-0.7, -0.3, 0.4, 3.0, 40.0])
def test_combine_matches_direct_formula(d):
    wx, wy = 0.3, 0.07
    direct = (2 ** d * wx ** (1 + d) + 2 ** d * wy ** (1 + d)) ** (1 / (1 + d))
    assert combine_weight(wx, wy, d) == pytest.approx(direct, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-4, 1.0), st.floats(1e-4, 1.0), st.sampled_from(D_GRID))
def test_combine_vs_sum(wx, wy, d):
    w = combine_weight(wx, wy, d)
    if d > 0:
        assert w >= (wx + wy) * (1 - 1e-12)
    elif d < 0:
        assert w <= (wx + wy) * (1 + 1e-12)
    assert w > max(wx, wy) or d < 0


def test_dyadic_code():
    res = optimal_code([0.5, 0.25, 0.125, 0.125], 2)
    assert tuple(res.lengths) == (1, 2, 3, 3)
    assert res.objective == pytest.approx(0.0, abs=1e-12)


def test_three_symbol_code():
    res = optimal_code([0.4, 0.3, 0.3], 1)
    assert tuple(res.lengths) == (1, 2, 2)
    assert res.objective == pytest.approx(math.log2(1.04), abs=1e-12)
    assert res.complete


def test_head_below_point_four_gets_length_two():
    res = optimal_code([0.3] + [0.7 / 3] * 3, -0.5)
    assert tuple(res.lengths) == (2, 2, 2, 2)


def test_single_symbol():
    res = optimal_code([1.0], 1)
    assert tuple(res.lengths) == (0,) and res.objective == 0.0


def test_complete_condition_examples():
    for n in (2, 3, 5, 8):
        for d in D_GRID:
            assert complete_condition([1 / n] * n, d)
    b = sorted(BENFORD, reverse=True)
    f = math.sqrt(2 * b[-2] ** 2 + 2 * b[-1] ** 2)
    assert f == pytest.approx(0.0971, abs=1e-3)
    assert not complete_condition(BENFORD, 1)
    assert complete_condition([0.4, 0.3, 0.3], 1)


def test_canonical_codewords_prefix_free():
    lengths = [2, 1, 3, 3]
    words = canonical_codewords(lengths)
    assert [len(w) for w in words] == lengths
    for a in words:
        for b in words:
            assert a is b or not b.startswith(a)


@pytest.mark.parametrize("n", range(2, 9))
def test_coder_matches_oracle(n):
    for p in random_dists(seed=100 + n, n=n, count=25):
        for d in D_GRID:
            opt, _ = brute_force_optimum(p, d)
            assert optimal_code(p, d).objective == pytest.approx(opt, abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(distributions(max_n=10), st.sampled_from(D_GRID))
def test_tree_properties(p, d):
    res = optimal_code(p, d)
    assert kraft_sum(res.lengths) == 1.0
    assert list(res.lengths) == sorted(res.lengths)
    assert res.objective == pytest.approx(exp_redundancy(p, res.lengths, d), abs=1e-12)
    assert subtree_ordering_holds(res.tree, d)
    for node in res.tree.internal_nodes():
        assert node.weight == pytest.approx(combine_weight(node.left.weight, node.right.weight, d), rel=1e-12)
    if complete_condition(p, d):
        assert res.complete and is_complete(res.lengths)
    if 0 < d:
        w = res.tree.merge_weights
        assert all(b >= a * (1 - 1e-12) for a, b in zip(w, w[1:]))


@settings(max_examples=150, deadline=None)
@given(distributions(max_n=10), st.sampled_from([-0.9, -0.5, -0.1, 0.5, 1, 2, 16]))
def test_root_weight_carries_redundancy(p, d):
    # merges keep sum w**(1+d) 2**(d*depth) fixed, so w_root**((1+d)/d) = 2**R
    res = optimal_code(p, d)
    assert (1 + d) / d * math.log2(res.root_weight) == pytest.approx(res.objective, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(distributions(max_n=10))
def test_root_weight_at_infinity(p):
    res = optimal_code(p, "inf")
    assert res.root_weight == pytest.approx(2 ** res.objective, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(distributions(max_n=10))
def test_near_zero_matches_huffman(p):
    linear = optimal_code(p, 0)
    assert optimal_code(p, 1e-7).objective == pytest.approx(linear.objective, abs=1e-4)
    assert optimal_code(p, 1e-5).objective == pytest.approx(linear.objective, abs=1e-4)


def test_ties_break_toward_older_items():
    # all equal weights: FIFO order gives the balanced tree
    res = optimal_code([1 / 6] * 6, 1)
    assert tuple(res.lengths) == (2, 2, 3, 3, 3, 3)


def test_large_alphabet_runs():
    rng = np.random.default_rng(3)
    p = rng.dirichlet(np.ones(2000))
    res = optimal_code(p / p.sum(), 2.0)
    assert kraft_sum(res.lengths) == pytest.approx(1.0)
