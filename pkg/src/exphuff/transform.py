"""Exponential-average length through the exponential-redundancy machinery.

With d = lg a and alpha = 1/(1+d),

    L_a(l, p) = R^d(escort(p, alpha), l) + H_alpha(p),

and the entropy term does not depend on the lengths, so optimal L_a codes
and bounds on L_a follow from those for R^d on the escort distribution.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .bounds import lower_bound, upper_bound
from .coder import optimal_code
from .core import (
    LINEAR_EPS,
    ExpParam,
    LengthVector,
    as_distribution,
    escort,
    exp_length,
    renyi_entropy,
)


def _param(a: float) -> ExpParam:
    a = float(a)
    if not a > 0.5:
        raise ValueError("base a must exceed 0.5 (smaller a has a trivial solution), got %r" % a)
    if math.isinf(a):
        raise ValueError("base a must be finite")
    return ExpParam.from_a(a)


def la_optimal(p, a: float) -> Tuple[LengthVector, float]:
    """Lengths minimizing L_a, and the minimal L_a.

    Lengths are aligned with the sorted distribution.
    """
    p = as_distribution(p)
    d = _param(a)
    if abs(d.d) < LINEAR_EPS:
        res = optimal_code(p, 0.0)
        return res.lengths, exp_length(p, res.lengths, a)
    res = optimal_code(escort(p, d.alpha), d)
    return res.lengths, res.objective + renyi_entropy(p, d.alpha)


def bound_argument(p, a: float, j: int) -> float:
    """p_j**alpha * 2**((alpha-1) H_alpha(p)), written out as a closed form.

    Numerically equal to the escort probability of symbol j.
    """
    p = as_distribution(p)
    d = _param(a)
    alpha = d.alpha
    return 2.0 ** (alpha * math.log2(p.probs[j]) + (alpha - 1.0) * renyi_entropy(p, alpha))


def la_bounds(p, a: float, j: int = 0) -> Tuple[float, float]:
    """Bounds ``lower <= L_a^opt(p) < upper`` knowing only p_j and H_alpha(p).

    ``j`` indexes the sorted distribution (0 is the most probable symbol).
    """
    p = as_distribution(p)
    d = _param(a)
    if not 0 <= j < p.n:
        raise IndexError("symbol index %d out of range for %d symbols" % (j, p.n))
    if p.n == 1:
        return 0.0, 0.0
    alpha = 1.0 if abs(d.d) < LINEAR_EPS else d.alpha
    q_j, rest = _escort_split(p, alpha, j)
    h = renyi_entropy(p, alpha)
    lo = lower_bound(q_j, d, rest=rest).value
    hi = upper_bound(q_j, d, most_probable=(j == 0), rest=rest).value
    return lo + h, hi + h


def _escort_split(p, alpha: float, j: int) -> Tuple[float, float]:
    """Escort probability of symbol j and the summed escort mass of the others.

    The second value is summed directly rather than taken as 1 - q_j, which
    keeps its relative accuracy when q_j is close to 1.
    """
    logs = alpha * np.log2(p.as_array())
    w = np.exp2(logs - logs.max())
    total = math.fsum(w)
    rest = math.fsum(np.delete(w, j))
    return float(w[j]) / total, rest / total
