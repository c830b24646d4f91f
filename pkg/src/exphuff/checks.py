"""Randomized certification of the coder and the bounds against the oracle."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, List

import mpmath
import numpy as np

from . import bounds as B
from .coder import complete_condition, optimal_code, subtree_ordering_holds
from .core import Distribution, ExpParam, as_exp_param, make_distribution
from .oracle import MAX_N, brute_force_optimum, verify_theorem3

EQ_TOL = 1e-9
DEFAULT_DS = ("-0.9", "-0.5", "-0.1", "0", "0.5", "1", "2", "16", "inf")
LENGTH_TWO_FAMILY = (0.26, 0.3, 0.39)

mpmath.mp.dps = 50


def _mp_redundancy(p: Distribution, lengths, d: float):
    d = mpmath.mpf(d)
    s = mpmath.fsum(mpmath.mpf(x) ** (1 + d) * mpmath.power(2, d * l) for x, l in zip(p.probs, lengths))
    return mpmath.log(s, 2) / d


def _mp_upper(p_j: float, res: B.BoundResult, d: float):
    pj, d = mpmath.mpf(p_j), mpmath.mpf(d)
    if res.branch == B.PRIMARY:
        lam = res.arg
        inner = pj ** (1 + d) + 2 ** d * (1 - pj) ** (1 + d) / (mpmath.power(2, lam) - 1) ** d
        return lam + mpmath.log(inner, 2) / d
    if res.branch == B.SECONDARY_FORMULA:
        return mpmath.log(pj ** (1 + d) * 4 ** d + (1 - pj) ** (1 + d) * 2 ** d, 2) / d
    return mpmath.mpf(res.value)


def sandwich_holds(p: Distribution, lengths, opt: float, j: int, d: ExpParam) -> bool:
    """lower(p_j) <= R_opt < upper(p_j), with 0 <= lower and upper <= 1.

    At d = inf the upper inequality is only non-strict.  For finite d a
    float tie is re-decided at 50 significant digits.
    """
    p_j = p.probs[j]
    lo = B.lower_bound(p_j, d)
    up = B.upper_bound(p_j, d, most_probable=(j == 0))
    if lo.value < 0 or up.value > 1 + 1e-12:
        return False
    if lo.value > opt + EQ_TOL * max(1.0, abs(opt)):
        return False
    if d.is_inf:
        return opt <= up.value + 1e-12
    if opt < up.value:
        return True
    if d.is_linear or up.value - opt > 1e-9:
        return False
    return _mp_redundancy(p, lengths, d.d) < _mp_upper(p_j, up, d.d)


def random_distribution(rng: np.random.Generator, n: int) -> Distribution:
    return make_distribution(rng.dirichlet(np.ones(n)))


def random_head_heavy(rng: np.random.Generator, n: int, p1_min: float = 0.4) -> Distribution:
    """Random distribution whose largest probability is at least p1_min."""
    p1 = rng.uniform(p1_min, 1.0)
    tail = rng.dirichlet(np.ones(n - 1)) * (1.0 - p1)
    return make_distribution([p1, *tail])


@dataclass
class VerifyReport:
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    failures: List[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = ""):
        if ok:
            self.passed[name] += 1
        else:
            self.failed[name] += 1
            if len(self.failures) < 50:
                self.failures.append("%s: %s" % (name, detail))

    @property
    def ok(self) -> bool:
        return not any(self.failed.values())

    def names(self):
        return sorted(set(self.passed) | set(self.failed))


def check_instance(p: Distribution, d: ExpParam, report: VerifyReport):
    res = optimal_code(p, d)
    opt, _ = brute_force_optimum(p, d)
    tag = "p=%s d=%s" % (list(np.round(p.probs, 6)), d)
    report.record("coder-vs-oracle", abs(res.objective - opt) <= EQ_TOL, tag)
    report.record(
        "sandwich", all(sandwich_holds(p, res.lengths, opt, j, d) for j in range(p.n)), tag
    )
    if not d.is_linear:
        # merges preserve sum w**(1+d) 2**(d depth), so R = ((1+d)/d) lg w_root
        scale = 1.0 if d.is_inf else (1.0 + d.d) / d.d
        report.record(
            "root-weight", abs(scale * math.log2(res.root_weight) - res.objective) <= EQ_TOL, tag
        )
    report.record("subtree-ordering", subtree_ordering_holds(res.tree, d), tag)
    if complete_condition(p, d):
        report.record("complete-tree", res.complete, tag)
    if not d.is_linear and d.d > 0:
        w = res.tree.merge_weights
        report.record("merge-order", all(b >= a * (1 - 1e-12) for a, b in zip(w, w[1:])), tag)
    if -1 < d.d < 0 and not d.is_linear and p.probs[0] >= 0.4:
        report.record("top-length-one", verify_theorem3(p, d), tag)


def run_verification(n_max: int = 8, trials: int = 200, seed: int = 0, ds: Iterable = DEFAULT_DS) -> VerifyReport:
    """Seeded random certification for alphabet sizes 2..n_max."""
    if n_max > MAX_N:
        raise ValueError("oracle range exceeded: n-max = %d > %d" % (n_max, MAX_N))
    if n_max < 2:
        raise ValueError("n-max must be at least 2")
    params = [as_exp_param(d) for d in ds]
    rng = np.random.default_rng(seed)
    report = VerifyReport()
    for n in range(2, n_max + 1):
        for _ in range(trials):
            p = random_distribution(rng, n)
            for d in params:
                check_instance(p, d, report)
    negatives = [d for d in params if not d.is_linear and -1 < d.d < 0]
    for n in range(2, n_max + 1):
        for _ in range(trials if negatives else 0):
            p = random_head_heavy(rng, n)
            for d in negatives:
                report.record("top-length-one", verify_theorem3(p, d), "p=%s d=%s" % (list(p.probs), d))
    for d in negatives:
        for p1 in LENGTH_TWO_FAMILY:
            p = make_distribution([p1] + [(1 - p1) / 3] * 3)
            report.record("top-length-two-family", not verify_theorem3(p, d), "p1=%g d=%s" % (p1, d))
    return report
