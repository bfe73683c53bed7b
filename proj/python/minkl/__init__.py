"""Minimum KL divergence on complements of total-variation balls.

Thin wrapper around the C++ core. All divergences are in nats; total
variation uses the full L1 convention with range [0, 2].
"""

from ._core import (
    BalanceReport,
    CapacityError,
    DiscreteDistribution,
    DomainError,
    DStarResult,
    InputError,
    LambdaBounds,
    SanovEstimate,
    VajdaPoint,
    __version__,
    balance_exact,
    balance_greedy,
    binary_coarsen,
    binary_tail_exact,
    dstar,
    dstar_enumerate,
    expansion_thm1,
    extremal_binary,
    extremal_tilt,
    kl2,
    kl_divergence,
    lambda_n,
    mcdiarmid_bound,
    monte_carlo,
    ow_lower,
    phi_coefficient,
    pinsker_lower,
    sample_jn,
    total_variation,
    vajda_L,
    vajda_by_minimization,
    vajda_parametric,
)

__all__ = [
    "BalanceReport",
    "CapacityError",
    "DiscreteDistribution",
    "DomainError",
    "DStarResult",
    "InputError",
    "LambdaBounds",
    "SanovEstimate",
    "VajdaPoint",
    "__version__",
    "balance_exact",
    "balance_greedy",
    "binary_coarsen",
    "binary_tail_exact",
    "dstar",
    "dstar_enumerate",
    "expansion_thm1",
    "extremal_binary",
    "extremal_tilt",
    "kl2",
    "kl_divergence",
    "lambda_n",
    "mcdiarmid_bound",
    "monte_carlo",
    "ow_lower",
    "phi_coefficient",
    "pinsker_lower",
    "sample_jn",
    "total_variation",
    "vajda_L",
    "vajda_by_minimization",
    "vajda_parametric",
]
