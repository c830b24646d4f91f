"""Bounds on the optimal exponential redundancy given one symbol probability.

Given only ``p_j`` (the probability of some symbol, not necessarily the
most probable one) and the exponent ``d``, these functions bracket the
redundancy of an optimal code:

    lower_bound(p_j, d) <= R_opt(p, d) < upper_bound(p_j, d)

Both bounds minimize over an integer (``mu`` for the lower bound, ``lambda``
for the upper bound) standing for the length given to symbol ``j``.  The
minimization is done by a direct sweep; the closed-form transition points
are provided separately and used to cross-check the sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .core import DLike, as_exp_param, binary_entropy

PRIMARY = "primary-formula"
SECONDARY_HALF = "secondary-halfbound"
SECONDARY_FORMULA = "secondary-formula"
MANSOUR_LINEAR = "mansour-linear"
MANSOUR_CONSTANT = "mansour-constant"

ROOT_TOL = 1e-10
SCAN_STEP = 1e-3


@dataclass(frozen=True)
class BoundResult:
    value: float
    arg: int
    branch: str = PRIMARY

    def __float__(self):
        return self.value


def _check_prob(p_j: float):
    if not (0.0 < p_j < 1.0):
        raise ValueError("p_j must lie strictly between 0 and 1, got %r" % p_j)


def _sweep_limit(p_j: float) -> int:
    return max(math.ceil(math.log2(1.0 / p_j)) + 4, 8)


def _lg_add(x: float, y: float) -> float:
    """lg(2**x + 2**y)."""
    hi, lo = max(x, y), min(x, y)
    return hi + math.log2(1.0 + 2.0 ** (lo - hi))


def _lg_rest(p_j: float, rest) -> float:
    """lg(1 - p_j), taken from ``rest`` when the caller knows it exactly.

    For p_j within a few ulps of 1 the subtraction 1 - p_j keeps almost no
    correct digits, so callers holding the remaining mass pass it in.
    """
    return math.log2(1.0 - p_j if rest is None else rest)


def _argmin(term: Callable[[int], float], p_j: float):
    best, arg = math.inf, 0
    for k in range(1, _sweep_limit(p_j) + 1):
        v = term(k)
        if v < best:
            best, arg = v, k
    return best, arg


def upper_term(p_j: float, lam: int, d: float, rest=None) -> float:
    """lam + (1/d) lg(p_j**(1+d) + 2**d (1-p_j)**(1+d) / (2**lam - 1)**d)."""
    a = (1.0 + d) * math.log2(p_j)
    b = d + (1.0 + d) * _lg_rest(p_j, rest) - d * math.log2(2.0 ** lam - 1.0)
    return lam + _lg_add(a, b) / d


def lower_term(p_j: float, mu: int, d: float, rest=None) -> float:
    """mu + (1/d) lg(p_j**(1+d) + (1-p_j)**(1+d) / (2**mu - 1)**d)."""
    a = (1.0 + d) * math.log2(p_j)
    b = (1.0 + d) * _lg_rest(p_j, rest) - d * math.log2(2.0 ** mu - 1.0)
    return mu + _lg_add(a, b) / d


def _finite_nonzero(d: DLike) -> float:
    d = as_exp_param(d)
    if d.is_inf or d.d == 0.0:
        raise ValueError("exponent must be finite and nonzero here, got %s" % d)
    return d.d


def upper_bound_primary(p_j: float, d: DLike, rest=None) -> BoundResult:
    """Upper bound from the Shannon-like code that gives symbol j length lambda."""
    _check_prob(p_j)
    d = _finite_nonzero(d)
    v, lam = _argmin(lambda k: upper_term(p_j, k, d, rest), p_j)
    return BoundResult(v, lam, PRIMARY)


def lower_bound_formula(p_j: float, d: DLike, rest=None) -> BoundResult:
    _check_prob(p_j)
    d = _finite_nonzero(d)
    v, mu = _argmin(lambda k: lower_term(p_j, k, d, rest), p_j)
    # the formula can dip a hair below 0 at dyadic p_j
    return BoundResult(max(v, 0.0), mu, PRIMARY)


def _transition(index: int, d: float, numerator: float) -> float:
    if index < 1:
        raise ValueError("index must be a positive integer")
    if d == 0 or math.isinf(d) or d <= -1:
        raise ValueError("d must be finite, nonzero and > -1")
    gap = (2.0 ** index - 1.0) ** -d - (2.0 ** index - 0.5) ** -d
    return 1.0 / (1.0 + (numerator / gap) ** (1.0 / (1.0 + d)))


def lambda_transition(lam: int, d: float) -> float:
    """p_j at which the upper-bound minimizer moves between lam and lam+1."""
    return _transition(lam, d, 1.0 - 2.0 ** -d)


def mu_transition(mu: int, d: float) -> float:
    """p_j at which the lower-bound minimizer moves between mu and mu+1."""
    return _transition(mu, d, 2.0 ** d - 1.0)


def _check_negative_d(d: float):
    if not (-1.0 < d < 0.0):
        raise ValueError("d must lie in (-1, 0), got %r" % d)


def secondary_term(p_j: float, d: float) -> float:
    """(1/d) lg(p_j**(1+d) 4**d + (1-p_j)**(1+d) 2**d)."""
    a = 2.0 * d + (1.0 + d) * math.log2(p_j)
    b = d + (1.0 + d) * math.log2(1.0 - p_j)
    return _lg_add(a, b) / d


def secondary_upper_bound(p_j: float, d: float) -> float:
    """Upper bound for d < 0 when p_j < 1/2."""
    _check_negative_d(d)
    if not (0.0 < p_j < 0.5):
        raise ValueError("p_j must lie in (0, 0.5), got %r" % p_j)
    return max(0.5, secondary_term(p_j, d))


def _bisect(f: Callable[[float], float], lo: float, hi: float) -> float:
    flo = f(lo)
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(f: Callable[[float], float], lo: float, hi: float, step: float = SCAN_STEP):
    """Bracket sign changes of f on a grid and refine each by bisection."""
    roots = []
    x0, f0 = lo, f(lo)
    n = int(round((hi - lo) / step))
    for k in range(1, n + 1):
        x1 = lo + k * step if k < n else hi
        f1 = f(x1)
        if f0 == 0.0:
            roots.append(x0)
        elif (f0 > 0) != (f1 > 0):
            roots.append(_bisect(f, x0, x1))
        x0, f0 = x1, f1
    return roots


@lru_cache(maxsize=256)
def pi0(d: float) -> float:
    """First p in (0, 1/2) where the secondary bound's formula crosses 1/2."""
    _check_negative_d(d)
    roots = _scan_roots(lambda p: secondary_term(p, d) - 0.5, SCAN_STEP, 0.5 - 1e-9)
    if not roots:
        raise ValueError("no crossing in (0, 0.5) for d = %r" % d)
    return roots[0]


def _linear_bound_gap(p1: float) -> float:
    return 3.0 - 5.0 * p1 - binary_entropy(2.0 * p1) - (2.0 - math.log2(3.0))


@lru_cache(maxsize=1)
def pi1() -> float:
    """Switch point (about 0.491) between the two pieces of the linear bound."""
    roots = _scan_roots(_linear_bound_gap, 0.25, 0.5)
    return roots[-1]


def mansour_linear_bound(p1: float) -> BoundResult:
    """Known upper bound on linear redundancy when the most probable symbol has p1 < 1/2."""
    if not (0.0 < p1 < 0.5):
        raise ValueError("p1 must lie in (0, 0.5), got %r" % p1)
    if p1 >= pi1():
        return BoundResult(3.0 - 5.0 * p1 - binary_entropy(2.0 * p1), 1, MANSOUR_LINEAR)
    return BoundResult(2.0 - math.log2(3.0), 1, MANSOUR_CONSTANT)


def bound_limit_zero(p_j: float, which: str) -> float:
    """Linear-redundancy (d -> 0) limit of the lower or upper bound."""
    return _limit_zero(p_j, which).value


def _limit_zero(p_j: float, which: str, rest=None) -> BoundResult:
    _check_prob(p_j)
    q = 1.0 - p_j if rest is None else rest
    h = -p_j * math.log2(p_j) - q * math.log2(q)
    if which == "lower":
        v, k = _argmin(lambda m: m - h - q * math.log2(2.0 ** m - 1.0), p_j)
        return BoundResult(max(v, 0.0), k)
    if which == "upper":
        v, k = _argmin(lambda m: m - h + q * (1.0 - math.log2(2.0 ** m - 1.0)), p_j)
        return BoundResult(v, k)
    raise ValueError("which must be 'lower' or 'upper', got %r" % which)


def bound_limit_inf(p_j: float, which: str) -> float:
    """Minimax pointwise redundancy (d -> inf) limit of the lower or upper bound."""
    return _limit_inf(p_j, which).value


def _limit_inf(p_j: float, which: str, rest=None) -> BoundResult:
    _check_prob(p_j)
    q = 1.0 - p_j if rest is None else rest
    if which == "lower":
        v, k = _argmin(lambda m: m + math.log2(max(p_j, q / (2.0 ** m - 1.0))), p_j)
        return BoundResult(max(v, 0.0), k)
    if which == "upper":
        v, k = _argmin(lambda m: m + math.log2(max(p_j, 2.0 * q / (2.0 ** m - 1.0))), p_j)
        return BoundResult(v, k)
    raise ValueError("which must be 'lower' or 'upper', got %r" % which)


def lower_bound(p_j: float, d: DLike, rest=None) -> BoundResult:
    """Lower bound on optimal exponential redundancy given p_j (tight).

    ``rest`` optionally supplies the mass 1 - p_j of the other symbols.
    """
    d = as_exp_param(d)
    if d.is_inf:
        return _limit_inf(p_j, "lower", rest)
    if d.is_linear:
        return _limit_zero(p_j, "lower", rest)
    return lower_bound_formula(p_j, d, rest)


def upper_bound(p_j: float, d: DLike, most_probable: bool = False, rest=None) -> BoundResult:
    """Effective strict upper bound on optimal exponential redundancy given p_j.

    For d < 0 and p_j < 1/2 the secondary bound is also tried.  With
    ``most_probable=True`` (p_j is known to be the largest probability) and
    d <= 0, the linear-case bound applies as well, since redundancy is
    nondecreasing in d.  The smallest candidate wins and its origin is
    recorded in ``branch``.  ``rest`` is as in :func:`lower_bound`.
    """
    d = as_exp_param(d)
    if d.is_inf:
        return _limit_inf(p_j, "upper", rest)
    if d.is_linear:
        best = _limit_zero(p_j, "upper", rest)
    else:
        best = upper_bound_primary(p_j, d, rest)
    if d.d < 0 and not d.is_linear and p_j < 0.5:
        sec = secondary_upper_bound(p_j, d.d)
        if sec < best.value:
            branch = SECONDARY_HALF if sec == 0.5 else SECONDARY_FORMULA
            best = BoundResult(sec, 1, branch)
    if most_probable and d.d <= 0 and p_j < 0.5:
        lin = mansour_linear_bound(p_j)
        if lin.value < best.value:
            best = lin
    return best
