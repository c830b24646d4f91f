"""Exhaustive search over complete code trees for small alphabets.

Every optimal code can be taken to be a complete tree, so enumerating the
multisets of leaf depths with Kraft sum exactly 1 and pairing them
(shortest with most probable) against the distribution covers all optimal
length assignments.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Tuple

from .core import DLike, Distribution, LengthVector, as_distribution, as_exp_param, exp_redundancy

MAX_N = 14
OPT_TOL = 1e-9


class LengthMultiset(tuple):
    """Nondecreasing codeword lengths whose Kraft sum is exactly 1."""

    def __new__(cls, lengths):
        ls = tuple(sorted(int(l) for l in lengths))
        if ls:
            top = ls[-1]
            # exact integer Kraft check on a 2**top scale
            if sum(1 << (top - l) for l in ls) != 1 << top:
                raise ValueError("lengths %r do not form a complete tree" % (ls,))
        return super().__new__(cls, ls)


def _check_n(n: int, max_n: int):
    if n < 1:
        raise ValueError("need at least one symbol")
    if n > max_n:
        raise ValueError("oracle range exceeded: n = %d > %d" % (n, max_n))


@lru_cache(maxsize=None)
def _split_closure(n: int) -> Tuple[Tuple[int, ...], ...]:
    """All complete-tree depth multisets with n leaves, by splitting leaves."""
    if n == 1:
        return ((0,),)
    out = set()
    for ms in _split_closure(n - 1):
        for depth in set(ms):
            grown = list(ms)
            grown.remove(depth)
            grown += [depth + 1, depth + 1]
            out.add(tuple(sorted(grown)))
    return tuple(sorted(out))


def enumerate_complete_length_multisets(n: int, l_max: int = None, max_n: int = MAX_N) -> List[LengthMultiset]:
    """All multisets of n codeword lengths with Kraft sum 1 and max length <= l_max.

    ``l_max`` defaults to n - 1, the deepest a complete n-leaf tree can be.

    >>> enumerate_complete_length_multisets(4)
    [(1, 2, 3, 3), (2, 2, 2, 2)]
    """
    _check_n(n, max_n)
    if l_max is None:
        l_max = max(n - 1, 0)
    if n > 1 and (1 << l_max) < n:
        raise ValueError("l_max = %d is too small for %d leaves" % (l_max, n))
    return [LengthMultiset(ms) for ms in _split_closure(n) if ms[-1] <= l_max]


def count_complete_trees(n: int) -> int:
    """Number of depth multisets of complete binary trees with n leaves.

    Counted level by level: with ``open`` unfilled nodes at the current
    depth, choose how many become leaves and split the rest.  Independent of
    the leaf-splitting enumeration.
    """

    @lru_cache(maxsize=None)
    def ways(leaves_left: int, open_nodes: int) -> int:
        if open_nodes == 0:
            return 1 if leaves_left == 0 else 0
        total = 0
        for stop in range(0, min(open_nodes, leaves_left) + 1):
            nxt = 2 * (open_nodes - stop)
            if nxt <= leaves_left - stop:
                total += ways(leaves_left - stop, nxt)
        return total

    return ways(n, 1)


def brute_force_optimum(p, d: DLike, max_n: int = MAX_N) -> Tuple[float, List[LengthMultiset]]:
    """Minimum exponential redundancy over all complete trees, and every minimizer.

    Lengths are paired nondecreasing against the (sorted) probabilities.
    Multisets within ``OPT_TOL`` (relative, floored at 1) of the minimum are
    all returned.
    """
    p = as_distribution(p)
    d = as_exp_param(d)
    _check_n(p.n, max_n)
    if p.n == 1:
        return 0.0, [LengthMultiset((0,))]
    scored = [(exp_redundancy(p, ms, d), ms) for ms in enumerate_complete_length_multisets(p.n, max_n=max_n)]
    best = min(v for v, _ in scored)
    tol = OPT_TOL * max(1.0, abs(best))
    return best, [ms for v, ms in scored if v <= best + tol]


def verify_theorem3(p, d: float) -> bool:
    """Whether some optimal code gives the most probable symbol length 1 (d < 0)."""
    d = as_exp_param(d)
    if not (-1.0 < d.d < 0.0):
        raise ValueError("d must lie in (-1, 0), got %s" % d)
    _, optima = brute_force_optimum(p, d)
    return any(ms[0] == 1 for ms in optima)
