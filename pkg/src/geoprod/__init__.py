"""geoprod: extend analytic functions by multiplying and dividing sampled
values on geometric sequences, plus the prime-number specialization built
from prime-power ratios (generalized Moebius function and its
greatest-prime-order partial sums)."""

from .errors import (
    ConfigError,
    DegenerateRatioError,
    DivergentProductError,
    DomainError,
    ExtrapolationOrderError,
    GeoprodError,
    RatioConstraintError,
    ZeroFunctionValueError,
)
from .extension import (
    ExtensionResult,
    FactorCutoff,
    IsolatedFactor,
    TruncationErrorFactors,
    default_limit_schedule,
    elastic_invariance_check,
    extend,
    factor_cutoff_limit,
    identity_residual,
    isolate_factor,
    product_derivative,
    truncation_error_factors,
)
from .functions import (
    AnalyticFunctionModel,
    builtin,
    evaluate,
    factor_value,
    parse_complex,
    poly_exp_model,
    residual_factor_model,
)
from .numerics import (
    LogProduct,
    accumulate,
    extrapolate_limit,
    limit_schedule,
    principal_root,
)
from .primes import (
    Factorization,
    GpoBounds,
    MuStarTerm,
    factorize,
    gpo_enumerate,
    moebius,
    moebius_limit_deviation,
    moebius_star,
    mu_partial_sums,
    mu_star_partial_sums,
    mu_star_terms,
    mu_star_terms_up_to,
    nth_prime,
    prime_extend,
    prime_pi,
    primes_up_to,
)
from .sampling import (
    RatioSchedule,
    TruncationSpec,
    consolidated_product,
    sample_points,
    sampling_point,
    sampling_product,
    sampling_quotient,
    subset_prefactor,
)
from .subsets import (
    IntegerSubset,
    composition_count,
    enumerate_geo,
    geo_groups,
)

__version__ = "0.1.0"
