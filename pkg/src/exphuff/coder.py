"""Huffman-style construction of codes minimizing exponential redundancy.

The two lightest items are merged repeatedly, but the merged weight is
``(2**d wx**(1+d) + 2**d wy**(1+d)) ** (1/(1+d))`` instead of ``wx + wy``.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional

from .core import (
    DLike,
    LengthVector,
    as_distribution,
    as_exp_param,
    exp_redundancy,
)

TIE_TOL = 1e-12


def combine_weight(wx: float, wy: float, d: DLike) -> float:
    """Weight of the node formed by merging items of weight ``wx`` and ``wy``.

    Reduces to ``wx + wy`` for d = 0 and ``2 * max(wx, wy)`` for d = inf.
    """
    if not (wx > 0 and wy > 0):
        raise ValueError("weights must be positive, got %r and %r" % (wx, wy))
    d = as_exp_param(d)
    if d.is_inf:
        return 2.0 * max(wx, wy)
    if d.is_linear:
        return wx + wy
    hi, lo = max(wx, wy), min(wx, wy)
    t = 1.0 + d.d
    # 2**(d/t) * hi * (1 + (lo/hi)**t)**(1/t), safe for large |d|
    return 2.0 ** (d.d / t) * hi * (1.0 + (lo / hi) ** t) ** (1.0 / t)


@dataclass
class CodeNode:
    weight: float
    prob: float
    symbol: Optional[int] = None
    left: Optional["CodeNode"] = None
    right: Optional["CodeNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


class CodeTree:
    """Merge tree produced by :func:`optimal_code`.

    ``merge_weights`` lists the weights of internal nodes in creation order.
    Leaf ``symbol`` values index the sorted distribution.
    """

    def __init__(self, root: CodeNode, merge_weights: List[float]):
        self.root = root
        self.merge_weights = list(merge_weights)

    @property
    def root_weight(self) -> float:
        return self.root.weight

    def walk(self) -> Iterator[tuple]:
        """Yield ``(node, depth)`` for every node, preorder."""
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            yield node, depth
            if not node.is_leaf:
                stack.append((node.right, depth + 1))
                stack.append((node.left, depth + 1))

    def internal_nodes(self) -> List[CodeNode]:
        return [node for node, _ in self.walk() if not node.is_leaf]

    def leaf_depths(self) -> dict:
        return {node.symbol: depth for node, depth in self.walk() if node.is_leaf}


@dataclass(frozen=True)
class CodeResult:
    lengths: LengthVector
    tree: CodeTree
    objective: float
    complete: bool

    @property
    def root_weight(self) -> float:
        return self.tree.root_weight


class _Queue:
    """Min-queue on weight; near-equal weights (within TIE_TOL) pop oldest first."""

    def __init__(self):
        self._heap = []
        self._counter = itertools.count()

    def __len__(self):
        return len(self._heap)

    def push(self, node: CodeNode):
        heapq.heappush(self._heap, (node.weight, next(self._counter), node))

    def pop(self) -> CodeNode:
        first = heapq.heappop(self._heap)
        tied = [first]
        while self._heap and self._heap[0][0] <= first[0] + TIE_TOL:
            tied.append(heapq.heappop(self._heap))
        best = min(tied, key=lambda e: e[1])
        for e in tied:
            if e is not best:
                heapq.heappush(self._heap, e)
        return best[2]


def is_complete(lengths) -> bool:
    """True if all leaves sit at depth floor(lg n) or ceil(lg n)."""
    n = len(lengths)
    if n == 1:
        return True
    lo = n.bit_length() - 1
    hi = lo if n == 1 << lo else lo + 1
    return all(lo <= l <= hi for l in lengths)


def optimal_code(p, d: DLike) -> CodeResult:
    """Optimal prefix code for exponential redundancy of order ``d``.

    Lengths are aligned with the sorted distribution ``p`` (so they are
    nondecreasing).  A single symbol gets length 0 and objective 0.

    >>> res = optimal_code([0.4, 0.3, 0.3], 1)
    >>> tuple(res.lengths)
    (1, 2, 2)
    """
    p = as_distribution(p)
    d = as_exp_param(d)
    queue = _Queue()
    for i, w in enumerate(p.probs):
        queue.push(CodeNode(weight=w, prob=w, symbol=i))
    merges = []
    while len(queue) > 1:
        x = queue.pop()
        y = queue.pop()
        w = combine_weight(x.weight, y.weight, d)
        queue.push(CodeNode(weight=w, prob=x.prob + y.prob, left=x, right=y))
        merges.append(w)
    tree = CodeTree(queue.pop(), merges)

    # pair shortest depths with most probable symbols
    depths = sorted(tree.leaf_depths().values())
    lengths = LengthVector(depths)
    objective = 0.0 if p.n == 1 else exp_redundancy(p, lengths, d)
    return CodeResult(lengths, tree, objective, is_complete(lengths))


def complete_condition(p, d: DLike) -> bool:
    """Sufficient condition for a complete optimal tree: p_1 <= f(p_{n-1}, p_n)."""
    p = as_distribution(p)
    if p.n < 2:
        raise ValueError("need at least two symbols")
    return p.probs[0] <= combine_weight(p.probs[-2], p.probs[-1], d)


def subtree_ordering_holds(tree: CodeTree, d: DLike, tol: float = 1e-12) -> bool:
    """Check the subtree weight ordering of every internal node.

    For d > 0 each subtree's leaf probability is at most its weight; for
    d < 0 it is at least its weight.  Always true at d = 0.
    """
    d = as_exp_param(d)
    for node in tree.internal_nodes():
        if d.is_linear:
            continue
        if d.d > 0 and node.prob > node.weight * (1 + tol) + tol:
            return False
        if d.d < 0 and node.prob < node.weight * (1 - tol) - tol:
            return False
    return True


def canonical_codewords(lengths) -> List[str]:
    """Canonical binary codewords for the given lengths, in input order."""
    ls = [int(l) for l in lengths]
    if len(ls) == 1:
        return [""]
    order = sorted(range(len(ls)), key=lambda i: (ls[i], i))
    words = [""] * len(ls)
    code = 0
    prev = ls[order[0]]
    for rank, i in enumerate(order):
        if rank:
            code = (code + 1) << (ls[i] - prev)
            prev = ls[i]
        words[i] = format(code, "0%db" % ls[i])
    return words

