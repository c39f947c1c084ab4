"""Numerical verification toolkit for twisted weighted divisor sums.

The package evaluates the exponential sums sum'_{n<=x} D1(n) e(nh/k) (with
D1(n) = sum_{e|n} log e log(n/e)), their Riesz means, the associated Dirichlet
series F/E/F0 with their reflection formula, the principal part of F at s = 1,
truncated oscillatory expansions of the error terms, and mean-square
asymptotics -- each against an independent numerical route.
"""

__version__ = "0.1.0"

from .arith import (
    DivisorTable,
    RationalPhase,
    make_phase,
    point_eval,
    riesz_sum,
    sieve_tables,
    twisted_partial_sum,
)
from .cache import load_or_sieve, load_table, save_table
from .dirichlet import (
    E_hurwitz,
    E_series,
    F0_hurwitz,
    F0_series,
    F_at_negative,
    F_at_zero,
    F_hurwitz,
    F_series,
    LaurentData,
    SeriesTail,
    funceq_residual,
    hurwitz_triple,
    laurent_coefficients,
    laurent_fit,
)
from .errors import (
    BesselDomainError,
    CapExceededError,
    ConvergenceTooSlowError,
    CutoffTooSmallError,
    GammaPoleError,
    NonCoprimeError,
    NonpositiveIntegerPoleError,
    NumericFailure,
    OutOfRangeError,
    PoleAt1Error,
    WdivError,
)
from .meansquare import (
    MeanSquareReport,
    empirical_mean_square,
    mean_square_report,
    theorem2_main,
    theorem4_main,
)
from .special import (
    StieltjesSet,
    bessel_K,
    bessel_Y,
    chi,
    chi1,
    digamma,
    hurwitz_zeta,
    hurwitz_zeta_ds,
    hurwitz_zeta_pair,
    log_gamma,
    log_gamma_complex,
    stieltjes,
)
from .voronoi import (
    ComparisonReport,
    MainTermParams,
    bracket_discrepancy,
    compare_points,
    decay_slope,
    delta0_voronoi,
    delta_a_series,
    delta_direct,
    f1,
    f2,
    main_term_contour,
    main_term_params,
    main_term_printed,
    residual_rms_ratio,
    riesz_main_term,
)

__all__ = [name for name in dir() if not name.startswith("_")]
