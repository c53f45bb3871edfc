"""Offline best-arm selection from logged Gaussian bandit data."""

from ._core import (
    Instance,
    NumericalError,
    beta_delta,
    exact_pick_probabilities,
    exact_regret,
    hard_pair_log_ratio,
    hundred_arm_instance,
    lcb_dominance,
    minimax_lower_shape,
    minimax_upper,
    policy_bias,
    prior_delta,
    ratio_lower_bound_log,
    regret_bound,
    regret_bound_corollary,
    regret_bound_simplified,
    select_arm,
    simulate,
)

__all__ = [
    "Instance",
    "NumericalError",
    "beta_delta",
    "exact_pick_probabilities",
    "exact_regret",
    "hard_pair_log_ratio",
    "hundred_arm_instance",
    "lcb_dominance",
    "minimax_lower_shape",
    "minimax_upper",
    "policy_bias",
    "prior_delta",
    "ratio_lower_bound_log",
    "regret_bound",
    "regret_bound_corollary",
    "regret_bound_simplified",
    "select_arm",
    "simulate",
]
