"""Distributions, codeword lengths, entropies and the two exponential objectives.

All logarithms are base 2 unless a different base is explicit.  Objectives
are returned in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

NORMALIZE_TOL = 1e-6
SUM_TOL = 1e-9
KRAFT_TOL = 1e-12
# |d| below this is treated as the linear (d -> 0) limit
LINEAR_EPS = 1e-6


def _lg_sum_pow2(exponents: np.ndarray) -> float:
    """lg(sum(2**e)) without overflow, by factoring out the largest term."""
    top = float(np.max(exponents))
    if math.isinf(top):
        return top
    return top + math.log2(float(np.sum(np.exp2(exponents - top))))


@dataclass(frozen=True)
class Distribution:
    """A probability vector held in nonincreasing order.

    ``order[k]`` is the position in the caller's original input of the
    k-th most probable symbol, so sorted results can be mapped back.
    """

    probs: tuple
    order: tuple = field(default=None)

    def __post_init__(self):
        probs = tuple(float(x) for x in self.probs)
        object.__setattr__(self, "probs", probs)
        if self.order is None:
            object.__setattr__(self, "order", tuple(range(len(probs))))
        else:
            object.__setattr__(self, "order", tuple(int(i) for i in self.order))
        if not probs:
            raise ValueError("distribution is empty")
        if len(self.order) != len(probs):
            raise ValueError("order and probs differ in length")
        if any(not (x > 0.0) for x in probs):
            raise ValueError("distribution has a nonpositive entry")
        if abs(math.fsum(probs) - 1.0) > SUM_TOL:
            raise ValueError("probabilities sum to %r, not 1" % math.fsum(probs))
        if any(a < b for a, b in zip(probs, probs[1:])):
            raise ValueError("probabilities must be sorted nonincreasing")

    @property
    def n(self) -> int:
        return len(self.probs)

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i):
        return self.probs[i]

    def __iter__(self):
        return iter(self.probs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    def to_original_order(self, values: Sequence) -> list:
        """Rearrange per-sorted-symbol ``values`` into the input order."""
        out = [None] * self.n
        for k, pos in enumerate(self.order):
            out[pos] = values[k]
        return out


def make_distribution(values: Sequence[float]) -> Distribution:
    """Validate, normalize and sort a probability vector.

    Values must be positive and sum to 1 within ``NORMALIZE_TOL``; they are
    then divided by their sum and sorted nonincreasing (stable, so equal
    probabilities keep their input order).

    >>> make_distribution([0.25, 0.5, 0.25]).probs
    (0.5, 0.25, 0.25)
    """
    vals = [float(v) for v in values]
    if not vals:
        raise ValueError("distribution is empty")
    for v in vals:
        if not (v > 0.0) or math.isinf(v):
            raise ValueError("probabilities must be positive and finite, got %r" % v)
    total = math.fsum(vals)
    if abs(total - 1.0) > NORMALIZE_TOL:
        raise ValueError("probabilities are not normalized (sum = %r)" % total)
    vals = [v / total for v in vals]
    order = sorted(range(len(vals)), key=lambda i: -vals[i])
    return Distribution(tuple(vals[i] for i in order), tuple(order))


def as_distribution(p) -> Distribution:
    if isinstance(p, Distribution):
        return p
    return make_distribution(p)


class LengthVector(tuple):
    """Nonnegative integer codeword lengths satisfying the Kraft inequality.

    Length 0 is only meaningful for a one-symbol alphabet.
    """

    def __new__(cls, lengths):
        ls = tuple(int(l) for l in lengths)
        if any(l < 0 for l in ls):
            raise ValueError("codeword lengths must be nonnegative")
        if len(ls) > 1 and any(l == 0 for l in ls):
            raise ValueError("zero length is only valid for a single symbol")
        self = super().__new__(cls, ls)
        if kraft_sum(self) > 1.0 + KRAFT_TOL:
            raise ValueError("lengths %r violate the Kraft inequality" % (ls,))
        return self


def kraft_sum(lengths: Sequence[int]) -> float:
    """Sum of 2**-l over the lengths (exact for lengths below ~1000)."""
    return math.fsum(math.ldexp(1.0, -int(l)) for l in lengths)


@dataclass(frozen=True)
class ExpParam:
    """Exponent ``d`` of the exponential redundancy, with ``a = 2**d``.

    ``d = inf`` is the minimax pointwise redundancy limit and ``d = 0`` the
    linear (expected length) limit.  ``alpha = 1/(1+d)`` is the matching
    Renyi order.
    """

    d: float

    def __post_init__(self):
        d = float(self.d)
        if math.isnan(d) or d <= -1.0:
            raise ValueError("exponent d must lie in (-1, inf], got %r" % self.d)
        object.__setattr__(self, "d", d)

    @classmethod
    def from_a(cls, a: float) -> "ExpParam":
        a = float(a)
        if not a > 0.5:
            raise ValueError("base a must exceed 0.5, got %r" % a)
        return cls(math.log2(a))

    @classmethod
    def parse(cls, token) -> "ExpParam":
        """Accept floats and the strings ``"inf"``/``"0"``."""
        if isinstance(token, ExpParam):
            return token
        if isinstance(token, str):
            t = token.strip().lower()
            if t in ("inf", "+inf", "infinity", "oo"):
                return cls(math.inf)
            return cls(float(t))
        return cls(token)

    @property
    def a(self) -> float:
        return math.inf if self.is_inf else 2.0 ** self.d

    @property
    def alpha(self) -> float:
        if self.is_inf:
            return 0.0
        return 1.0 / (1.0 + self.d)

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.d)

    @property
    def is_linear(self) -> bool:
        return abs(self.d) < LINEAR_EPS

    def __str__(self):
        if self.is_inf:
            return "inf"
        return "%g" % self.d


DLike = Union[float, str, ExpParam]


def as_exp_param(d: DLike) -> ExpParam:
    return ExpParam.parse(d)


def renyi_entropy(p, alpha: float) -> float:
    """Renyi entropy of order ``alpha`` in bits.

    Orders 0, 1 and infinity use their limits (log of the support size,
    Shannon entropy, min-entropy).
    """
    p = as_distribution(p)
    alpha = float(alpha)
    if math.isnan(alpha) or alpha < 0:
        raise ValueError("alpha must be nonnegative, got %r" % alpha)
    x = p.as_array()
    if alpha == 0.0:
        return math.log2(p.n)
    if math.isinf(alpha):
        return -math.log2(x[0])
    if abs(alpha - 1.0) < 1e-6:
        return shannon_entropy(x)
    return _lg_sum_pow2(alpha * np.log2(x)) / (1.0 - alpha)


def shannon_entropy(probs) -> float:
    x = np.asarray(probs, dtype=float)
    x = x[x > 0]
    return float(-np.sum(x * np.log2(x)))


def binary_entropy(x: float) -> float:
    """h(x) = -x lg x - (1-x) lg(1-x), with h(0) = h(1) = 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _pair(p, lengths):
    """Distribution plus lengths aligned with its sorted order.

    A raw probability sequence is sorted on the way in, so its lengths are
    permuted the same way.
    """
    ls = np.asarray(lengths, dtype=float)
    dist = as_distribution(p)
    if ls.shape != (dist.n,):
        raise ValueError("got %d lengths for %d symbols" % (ls.size, dist.n))
    if not isinstance(p, Distribution):
        ls = ls[list(dist.order)]
    return dist, ls


def exp_redundancy(p, lengths, d: DLike) -> float:
    """Exponential-average redundancy (1/d) lg sum p_i**(1+d) 2**(d l_i).

    At d = 0 this is the ordinary redundancy sum p_i l_i - H(p); at
    d = inf it is the maximum pointwise redundancy max(l_i + lg p_i).
    """
    p, ls = _pair(p, lengths)
    d = as_exp_param(d)
    lp = np.log2(p.as_array())
    if d.is_inf:
        return float(np.max(ls + lp))
    if d.is_linear:
        return float(np.dot(p.as_array(), ls)) - shannon_entropy(p.probs)
    return _lg_sum_pow2((1.0 + d.d) * lp + d.d * ls) / d.d


def exp_length(p, lengths, a: float) -> float:
    """Exponential-average length log_a sum p_i a**l_i (expected length at a=1)."""
    a = float(a)
    if not a > 0.5:
        raise ValueError("base a must exceed 0.5, got %r" % a)
    p, ls = _pair(p, lengths)
    x = p.as_array()
    if abs(math.log2(a)) < LINEAR_EPS:
        return float(np.dot(x, ls))
    lg_a = math.log2(a)
    return _lg_sum_pow2(np.log2(x) + lg_a * ls) / lg_a


def escort(p, alpha: float) -> Distribution:
    """The escort distribution p_i**alpha / sum_k p_k**alpha.

    Order is preserved for alpha > 0, so the result keeps ``p.order``.
    """
    p = as_distribution(p)
    alpha = float(alpha)
    if not (alpha > 0) or math.isinf(alpha):
        raise ValueError("alpha must be finite and positive, got %r" % alpha)
    logs = alpha * np.log2(p.as_array())
    w = np.exp2(logs - logs.max())
    w /= w.sum()
    # renormalizing in float can nudge ties out of order by an ulp
    w = np.minimum.accumulate(w)
    w /= w.sum()
    return Distribution(tuple(w), p.order)
