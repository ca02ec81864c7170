"""exorder: order statistics of heterogeneous exponential samples.

Exact spacing laws, stochastic-order checkers (usual, dispersive, star,
more-SI, PQD), dependence measures (empirical copulas, Kendall tau,
Spearman rho, minimum-pair correlations), and the proportional-hazards
extension, plus a config-driven verification harness.
"""

from .config import CHECK_NAMES, ConfigError, ExperimentConfig, Report, build_baseline
from .dependence import (
    ConcordanceReport,
    CopulaGrid,
    concordance_report,
    copula_distribution_free_check,
    copula_from_function,
    empirical_copula,
    empirical_rho,
    empirical_tau,
    exact_tau_min_pair,
    exact_tau_min_pair_fraction,
    sathe_check,
)
from .distributions import (
    ContinuousDist,
    Empirical,
    Exponential,
    FiniteMixture,
    Hypoexponential,
    ShiftedDist,
    Uniform,
    Weibull,
    ecdf,
    ks_critical_value,
    ks_distance,
)
from .order_stats import (
    ConditionalFamily,
    RateVector,
    SpacingMixture,
    conditional_family,
    exact_min_corr,
    min_law,
    order_stat_cdf,
    order_stat_cdf_by_convolution,
    sample_min_pair,
    sample_order_stats,
    sample_spacing,
    spacing_law,
    spacing_law_by_permutations,
)
from .orders import (
    DEFAULT_GRID,
    FixedConditional,
    GridSpec,
    OrderVerdict,
    check_disp,
    check_more_si,
    check_pqd,
    check_st,
    check_star,
)
from .phr import PHRModel, phr_pair_copulas, phr_sample, phr_si_check, phr_transform
from .runner import emit_curves, run_experiment, selftest
from .streams import SampleStream

__version__ = "0.1.0"

__all__ = [
    "CHECK_NAMES",
    "ConcordanceReport",
    "ConditionalFamily",
    "ConfigError",
    "ContinuousDist",
    "CopulaGrid",
    "DEFAULT_GRID",
    "Empirical",
    "ExperimentConfig",
    "Exponential",
    "FiniteMixture",
    "FixedConditional",
    "GridSpec",
    "Hypoexponential",
    "OrderVerdict",
    "PHRModel",
    "RateVector",
    "Report",
    "SampleStream",
    "ShiftedDist",
    "SpacingMixture",
    "Uniform",
    "Weibull",
    "build_baseline",
    "check_disp",
    "check_more_si",
    "check_pqd",
    "check_st",
    "check_star",
    "concordance_report",
    "conditional_family",
    "copula_distribution_free_check",
    "copula_from_function",
    "ecdf",
    "emit_curves",
    "empirical_copula",
    "empirical_rho",
    "empirical_tau",
    "exact_min_corr",
    "exact_tau_min_pair",
    "exact_tau_min_pair_fraction",
    "ks_critical_value",
    "ks_distance",
    "min_law",
    "order_stat_cdf",
    "order_stat_cdf_by_convolution",
    "phr_pair_copulas",
    "phr_sample",
    "phr_si_check",
    "phr_transform",
    "run_experiment",
    "sample_min_pair",
    "sample_order_stats",
    "sample_spacing",
    "sathe_check",
    "selftest",
    "spacing_law",
    "spacing_law_by_permutations",
    "__version__",
]
