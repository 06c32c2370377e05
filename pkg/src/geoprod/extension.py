"""The user-facing engine: truncated multiplicative extension of a function
from sampled values, plus the derived tools built on the same products
(identity residual, truncation-error factors, ratio-invariance check,
factor isolation and cutoff classification, product derivative).

Everything is pure computation; per-subset and per-ratio work items are
independent, with results combined deterministically in group order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DivergentProductError
from .functions import (
    AnalyticFunctionModel,
    evaluate,
    poly_exp_model,
    residual_factor_model,
)
from .numerics import extrapolate_limit, limit_schedule
from .sampling import (
    RatioSchedule,
    TruncationSpec,
    _log_budget,
    sampling_quotient,
)
from .subsets import geo_group, geo_groups

__all__ = [
    "ExtensionResult",
    "FactorCutoff",
    "IsolatedFactor",
    "TruncationErrorFactors",
    "default_limit_schedule",
    "elastic_invariance_check",
    "extend",
    "factor_cutoff_limit",
    "identity_residual",
    "isolate_factor",
    "product_derivative",
    "truncation_error_factors",
]

# A group partial whose log-magnitude passes this bound is declared divergent.
DIVERGENT_LOG_MAGNITUDE = 1e6

# Default ratio schedule for r -> 1 limits, and the per-ratio depth rule
# cap(r) = ceil(LIMIT_CAP_COEFF / (r - 1)): the geometric tails behave like
# r**-cap = (1 + d)**-(coeff/d) ~ exp(-coeff), safely below 1e-12 at 40.
LIMIT_CAP_COEFF = 40


def default_limit_schedule() -> list[float]:
    return limit_schedule(3, 10)


def _limit_caps(schedule: Sequence[float], coeff: int = LIMIT_CAP_COEFF) -> list[tuple[float, int]]:
    return [(float(r), math.ceil(coeff / (float(r) - 1.0))) for r in schedule]


@dataclass(frozen=True)
class ExtensionResult:
    """Truncated extension value with the running value after each group."""

    value: complex
    group_partials: tuple[tuple[int, complex], ...]
    spec: TruncationSpec
    reference: complex | None = None
    relative_error: float | None = None


def extend(f: AnalyticFunctionModel, z: complex, spec: TruncationSpec) -> ExtensionResult:
    """Reconstruct f(z) from sampled values nearer the origin.

    Subsets of ``spec.s_max`` are combined in greatest-element order;
    products use the common-ratio consolidation whenever the schedule is
    common (one geometric sequence per subset instead of a |S|-dimensional
    grid).
    """
    z = complex(z)
    spec.ratios.validate(spec.s_max)
    reference = evaluate(f, z)
    running = 0j
    partials = []
    for m, group in geo_groups(spec.s_max):
        for subset in group:
            sign = 1 if len(subset) % 2 else -1
            running += sign * _log_budget(f, subset.elements, z, spec.ratios, spec.n_max)
        if abs(running.real) > DIVERGENT_LOG_MAGNITUDE:
            raise DivergentProductError(
                f"partial after group {m} has log-magnitude {running.real:.3g}"
            )
        if running.real > 709.0:
            raise DivergentProductError(
                f"partial after group {m} overflows double precision "
                f"(log-magnitude {running.real:.6g})"
            )
        partials.append((m, cmath.exp(running)))
    value = partials[-1][1]
    relative_error = abs(value - reference) / abs(reference)
    return ExtensionResult(
        value=value,
        group_partials=tuple(partials),
        spec=spec,
        reference=reference,
        relative_error=relative_error,
    )


def identity_residual(f: AnalyticFunctionModel, z: complex, spec: TruncationSpec) -> complex:
    """extend(f, z).value / f(z) - 1; tends to 0 as the truncation deepens."""
    result = extend(f, z, spec)
    return result.value / evaluate(f, complex(z)) - 1


@dataclass(frozen=True)
class TruncationErrorFactors:
    """Multiplicative error decomposition of a truncated extension.

    ``q_n`` is the truncated extension itself; ``tail_n_factor`` collects
    the factors cut off by the depth limit (computed at a much deeper
    internal cap, it tends to 1 as n_max grows); ``tail_k_factor`` accounts
    for function components outside the allowed integer set (None when the
    model is a black box, exactly 1 when no components lie outside).  When
    all three are available their product reproduces f(z) up to the deep
    cap's own roundoff.
    """

    q_n: complex
    tail_n_factor: complex
    tail_k_factor: complex | None
    reconstructed: complex | None
    reference: complex
    residual: float | None


def truncation_error_factors(
    f: AnalyticFunctionModel, z: complex, spec: TruncationSpec
) -> TruncationErrorFactors:
    if not spec.ratios.is_common:
        raise ValueError("the error decomposition is defined for a common ratio schedule")
    z = complex(z)
    spec.ratios.validate(spec.s_max)
    r = spec.ratios.common_ratio
    family = [s for _, g in geo_groups(spec.s_max) for s in g]

    # Depth at which remaining geometric tails fall below double roundoff.
    deep = spec.n_max + max(spec.n_max, math.ceil(40.0 / math.log(abs(r))))

    log_q = 0j
    log_tail = 0j
    for subset in family:
        sign = 1 if len(subset) % 2 else -1
        log_q += sign * _log_budget(f, subset.elements, z, spec.ratios, spec.n_max)
        log_tail += sign * _log_budget(
            f, subset.elements, z, spec.ratios, deep, start=spec.n_max + 1
        )
    q_n = cmath.exp(log_q)
    tail_n = cmath.exp(log_tail)

    reference = evaluate(f, z)
    if f.log_taylor_coeffs is None:
        return TruncationErrorFactors(q_n, tail_n, None, None, reference, None)

    covered = set(spec.s_max)
    leftover = [
        c for k, c in enumerate(f.log_taylor_coeffs, start=1) if k not in covered and c != 0
    ]
    if not leftover:
        tail_k: complex = 1 + 0j
    else:
        residual_model = residual_factor_model(f, covered)
        log_res = sum(
            (1 if len(s) % 2 else -1)
            * _log_budget(residual_model, s.elements, z, spec.ratios, deep)
            for s in family
        )
        tail_k = evaluate(residual_model, z) / cmath.exp(log_res)

    reconstructed = q_n * tail_n * tail_k
    residual = abs(reconstructed / reference - 1)
    return TruncationErrorFactors(q_n, tail_n, tail_k, reconstructed, reference, residual)


def elastic_invariance_check(
    f: AnalyticFunctionModel, z: complex, specs: Sequence[TruncationSpec]
) -> float:
    """Largest pairwise relative deviation among extensions that differ
    only in their ratio schedules.

    Analytic functions leave the quotient unchanged as the ratios (and so
    the evaluation points) move; a small return value certifies that.
    """
    if not specs:
        raise ValueError("need at least one truncation spec")
    first = specs[0]
    for other in specs[1:]:
        if other.s_max != first.s_max or other.n_max != first.n_max:
            raise ValueError("specs must differ only in their ratio schedules")
    values = [extend(f, z, spec).value for spec in specs]
    worst = 0.0
    for i, vi in enumerate(values):
        for j, vj in enumerate(values):
            if i != j:
                worst = max(worst, abs(vi - vj) / abs(vi))
    return worst


@dataclass(frozen=True)
class IsolatedFactor:
    """Limit value of one multiplicative component, with the extrapolation
    error estimate; ``converged`` is False when the estimate exceeds the
    requested tolerance (the value is still reported)."""

    value: complex
    error_estimate: float
    converged: bool


def isolate_factor(
    f: AnalyticFunctionModel,
    k: int,
    z: complex,
    r_schedule: Sequence[float] | None = None,
    cap_coeff: int = LIMIT_CAP_COEFF,
    tolerance: float = 1e-6,
) -> IsolatedFactor:
    """Recover the order-k factor exp(c_k z**k) of f.

    Evaluates the quotient over the subsets with maximum element k while
    the common ratio approaches 1 from above, then extrapolates to the
    limit; the lower-order samplings cancel in the limit, leaving the k-th
    component alone.
    """
    if k < 1:
        raise ValueError(f"factor order must be a positive integer, got {k}")
    if k > 12:
        raise ValueError(f"order {k} needs 2**{k - 1} subsets per ratio; keep k <= 12")
    z = complex(z)
    schedule = default_limit_schedule() if r_schedule is None else list(r_schedule)
    family = tuple(geo_group(tuple(range(1, k)), k))
    samples = []
    for r, cap in _limit_caps(schedule, cap_coeff):
        ratios = RatioSchedule.common(r, entire_function_mode=f.is_entire)
        samples.append((r, sampling_quotient(f, family, z, ratios, cap)))
    value, estimate = extrapolate_limit(samples)
    return IsolatedFactor(value=value, error_estimate=estimate, converged=estimate <= tolerance)


@dataclass(frozen=True)
class FactorCutoff:
    """Classified limit of sampling one component on one sequence.

    kind is one of 'equals_factor', 'one', 'zero', 'infinity',
    'indeterminate'; ``value`` is the limit when it is finite,
    ``last_log_magnitude`` the log-magnitude at the ratio closest to 1.
    """

    kind: str
    value: complex | None
    error_estimate: float | None
    last_log_magnitude: float


# Log-magnitude beyond which a trend is called divergent, and below which
# a trend is called flat; between them the data is ambiguous.
CUTOFF_DIVERGENCE_LOG = 8.0
CUTOFF_FLAT_LOG = 0.1


def factor_cutoff_limit(
    c_j: complex,
    j: int,
    k: int,
    z: complex,
    r_schedule: Sequence[float] | None = None,
    cap_coeff: int = LIMIT_CAP_COEFF,
) -> FactorCutoff:
    """Classify lim of the product of exp(c_j w**j) over the k-sequence as
    the ratio drops to 1: the component itself when j = k, 1 when j > k or
    c_j = 0, and 0 or divergence when j < k depending on the sign driving
    the log-magnitude trend.
    """
    if j < 1 or k < 1:
        raise ValueError("orders j and k must be positive integers")
    if j > 8 or k > 8:
        raise ValueError("orders above 8 make the near-1 products needlessly deep")
    c_j = complex(c_j)
    z = complex(z)
    schedule = default_limit_schedule() if r_schedule is None else list(r_schedule)
    if c_j == 0:
        return FactorCutoff("one", 1 + 0j, 0.0, 0.0)

    coeffs = tuple(0j for _ in range(j - 1)) + (c_j,)
    model = poly_exp_model(coeffs, label=f"factor[{j}]")
    logs = []
    for r, cap in _limit_caps(schedule, cap_coeff):
        ratios = RatioSchedule.common(r, entire_function_mode=True)
        logs.append(_log_budget(model, (k,), z, ratios, cap))
    last = logs[-1]

    if j == k:
        samples = [(r, cmath.exp(w)) for r, w in zip(schedule, logs)]
        value, estimate = extrapolate_limit(samples)
        return FactorCutoff("equals_factor", value, estimate, last.real)
    if j > k:
        # The log-product decays like a fractional power of r - 1, which a
        # polynomial extrapolation cannot represent; the limit is 1 and the
        # deepest sample's distance from it is the honest error estimate.
        return FactorCutoff("one", 1 + 0j, abs(cmath.exp(last) - 1), last.real)

    # j < k: the sampled magnitudes follow |P| = exp(Re(c_j z**j) * g(r))
    # with g -> +inf, so the trend of the log-magnitude decides.
    if last.real < -CUTOFF_DIVERGENCE_LOG and last.real < logs[0].real:
        return FactorCutoff("zero", 0j, None, last.real)
    if last.real > CUTOFF_DIVERGENCE_LOG and last.real > logs[0].real:
        return FactorCutoff("infinity", None, None, last.real)
    return FactorCutoff("indeterminate", None, None, last.real)


def product_derivative(
    f: AnalyticFunctionModel,
    z: complex,
    dz: complex,
    r_schedule: Sequence[float] | None = None,
    cap_coeff: int = LIMIT_CAP_COEFF,
) -> complex:
    """Derivative of f at z from an infinite product of function values.

    Sums log(f(z + ((r-1)/r**n) dz) / f(z)) over the sequence, extrapolates
    the sum to the r = 1 limit and scales by f(z)/dz.  The step dz need not
    be small; only the ratio limit matters.
    """
    z = complex(z)
    dz = complex(dz)
    if dz == 0:
        raise ValueError("dz must be nonzero")
    f_z = evaluate(f, z)
    schedule = default_limit_schedule() if r_schedule is None else list(r_schedule)
    samples = []
    for r, cap in _limit_caps(schedule, cap_coeff):
        inv_r = 1.0 / r
        step = (r - 1.0) * inv_r * dz
        total = 0j
        for _ in range(cap):
            total += cmath.log(evaluate(f, z + step) / f_z)
            step *= inv_r
        samples.append((r, total))
    limit_value, _ = extrapolate_limit(samples)
    return f_z * limit_value / dz
