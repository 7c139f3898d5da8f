"""Norming constants for maxima of Weibull-like distributions.

Exact, standard and improved constants for generalized Weibull and Gamma
laws, the Lambert W and log-log expansions behind them, and numerical
diagnostics of the convergence to the Gumbel law.
"""

from .asymptotic import (
    solve_power_exp,
    t_comtet,
    t_lambert,
    u_gamma_d_expansion,
    u_gamma_d_numeric,
    u_gamma_expansion,
    w_secondary_d_expansion,
    w_secondary_expansion,
)
from .convergence import (
    RateReport,
    XGrid,
    a_optimality_scan,
    ks_statistic,
    perturbation_check,
    rate_check,
    sup_distance,
)
from .distributions import (
    GammaParams,
    GammaTail,
    GeneralizedWeibullParams,
    TailForm,
    auxiliary_A,
    chi2,
    gumbel_cdf,
    gumbel_pdf,
    gumbel_quantile,
    simple_case,
)
from .estimator import GumbelNormalizer
from .exceptions import BracketError, ConvergenceError, DomainError, IllConditionedWarning, ValidityError
from .norming import (
    Method,
    NormingConstants,
    constants_via_expansion,
    exact_constants,
    improved_constants,
    norming_constants,
    standard_constants,
)
from .series import PowerSeries, comtet_P, robin_Q, salvi_R
from .simulate import ExperimentConfig, maxima_experiment, sample_gamma, sample_gw
from .special_fn import Branch, lambert_w, log_gamma, reg_gamma_p, reg_gamma_q, reg_gamma_q_inv

__version__ = "0.1.0"
