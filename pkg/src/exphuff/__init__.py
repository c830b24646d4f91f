"""Optimal prefix codes and redundancy bounds for exponential objectives."""

from .bounds import (
    BoundResult,
    bound_limit_inf,
    bound_limit_zero,
    lambda_transition,
    lower_bound,
    mansour_linear_bound,
    mu_transition,
    pi0,
    pi1,
    secondary_upper_bound,
    upper_bound,
    upper_bound_primary,
)
from .coder import CodeResult, CodeTree, combine_weight, complete_condition, optimal_code
from .core import (
    Distribution,
    ExpParam,
    LengthVector,
    escort,
    exp_length,
    exp_redundancy,
    kraft_sum,
    make_distribution,
    renyi_entropy,
)
from .estimator import ExpHuffmanCoder
from .oracle import (
    LengthMultiset,
    brute_force_optimum,
    enumerate_complete_length_multisets,
    verify_theorem3,
)
from .transform import la_bounds, la_optimal

__version__ = "0.1.0"
