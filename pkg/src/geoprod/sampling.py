"""Geometric sampling machinery: sequences X, products P, quotients Q.

The sampling sequence generated by the integer k with ratio r_k is
``X(k, n) = (r_k**k - 1)**(1/k) / r_k**n`` (principal root).  A sampling
product multiplies function values over one index per element of an
integer subset; a sampling quotient multiplies products of odd-size
subsets and divides by products of even-size subsets.

Truncation convention: the engine-level operations cap the *total*
exponent ``sum n_k`` of each subset at ``n_max``.  For a common ratio the
points then depend on the total alone, so the product collapses to a
single loop with binomial multiplicities (``composition_count``); for
per-k ratios the tuples are enumerated directly.  The standalone
``sampling_product`` operation instead caps each index separately
(``per_index_cap``), which is the natural truncation of the nested
product definition.

All operations are pure; distinct subsets may be computed concurrently
and combined afterwards, since only the grouped combination order is
mathematically meaningful.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DegenerateRatioError,
    DivergentProductError,
    RatioConstraintError,
)
from .functions import AnalyticFunctionModel, evaluate
from .numerics import principal_root
from .subsets import IntegerSubset, bounded_composition_count, composition_count

__all__ = [
    "RatioSchedule",
    "TruncationSpec",
    "consolidated_product",
    "sample_points",
    "sampling_point",
    "sampling_product",
    "sampling_quotient",
    "subset_prefactor",
]

# Direct per-k tuple enumeration is exponential in |S|; refuse silly sizes.
MAX_DIRECT_TUPLES = 5_000_000


def _nth_prime(k: int) -> int:
    # Local import: the primes module pulls in the extension engine, which
    # imports this module.
    from .primes import nth_prime

    return nth_prime(k)


@dataclass(frozen=True)
class RatioSchedule:
    """Reciprocal geometric ratios r_k: a common value, a per-k list, or
    the prime-power rule r_k = p_k**s.

    ``entire_function_mode`` skips the Re(r_k**k) >= 1/2 check, which only
    guards evaluation points for functions that are not entire.
    """

    kind: str
    common_ratio: complex | None = None
    per_k_ratios: tuple[complex, ...] | None = None
    power: complex | None = None
    entire_function_mode: bool = False

    @classmethod
    def common(cls, r: complex, entire_function_mode: bool = False) -> "RatioSchedule":
        return cls("common", common_ratio=complex(r), entire_function_mode=entire_function_mode)

    @classmethod
    def per_k(cls, ratios: Iterable[complex], entire_function_mode: bool = False) -> "RatioSchedule":
        return cls(
            "per_k",
            per_k_ratios=tuple(complex(r) for r in ratios),
            entire_function_mode=entire_function_mode,
        )

    @classmethod
    def prime_power(cls, s: complex, entire_function_mode: bool = False) -> "RatioSchedule":
        return cls("prime_power", power=complex(s), entire_function_mode=entire_function_mode)

    def __post_init__(self):
        if self.kind not in ("common", "per_k", "prime_power"):
            raise ValueError(f"unknown ratio schedule kind {self.kind!r}")
        if self.kind == "common" and self.common_ratio is None:
            raise ValueError("common schedule needs a ratio")
        if self.kind == "per_k" and not self.per_k_ratios:
            raise ValueError("per-k schedule needs a nonempty ratio list")
        if self.kind == "prime_power" and self.power is None:
            raise ValueError("prime-power schedule needs an exponent")

    @property
    def is_common(self) -> bool:
        return self.kind == "common"

    def ratio_for(self, k: int) -> complex:
        if k < 1:
            raise ValueError(f"sequence index must be a positive integer, got {k}")
        if self.kind == "common":
            return self.common_ratio
        if self.kind == "per_k":
            if k > len(self.per_k_ratios):
                raise ValueError(
                    f"per-k schedule has {len(self.per_k_ratios)} ratios, index {k} requested"
                )
            return self.per_k_ratios[k - 1]
        return _nth_prime(k) ** self.power

    def validate(self, ks: Iterable[int]) -> None:
        """Check |r_k| > 1 (always) and Re(r_k**k) >= 1/2 (unless entire)."""
        for k in sorted(set(ks)):
            r = self.ratio_for(k)
            if not abs(r) > 1:
                raise RatioConstraintError(f"|r_{k}| must exceed 1, got r_{k} = {r!r}")
            if not self.entire_function_mode:
                rk = r**k
                if rk.real < 0.5 - 1e-12:
                    raise RatioConstraintError(
                        f"Re(r_{k}**{k}) = {rk.real!r} < 1/2; "
                        "set entire_function_mode for entire functions"
                    )


@dataclass(frozen=True)
class TruncationSpec:
    """Truncation triplet: allowed integers, per-subset depth, ratios."""

    s_max: tuple[int, ...]
    n_max: int
    ratios: RatioSchedule

    def __post_init__(self):
        s_max = tuple(sorted({int(e) for e in self.s_max}))
        if not s_max:
            raise ValueError("s_max must name at least one integer")
        if s_max[0] < 1:
            raise ValueError(f"s_max must contain positive integers, got {s_max}")
        object.__setattr__(self, "s_max", s_max)
        if self.n_max < 1:
            raise ValueError(f"n_max must be a positive integer, got {self.n_max}")

    def with_ratios(self, ratios: RatioSchedule) -> "TruncationSpec":
        return TruncationSpec(self.s_max, self.n_max, ratios)


def _root_term(r: complex, k: int) -> complex:
    w = complex(r) ** k - 1
    if w == 0:
        raise DegenerateRatioError(f"(r_k)**k = 1 for r_{k} = {r!r}; sequence collapses")
    return principal_root(w, k)


def sampling_point(k: int, n: int, r_k: complex) -> complex:
    """The sequence point X(k, n) = (r_k**k - 1)**(1/k) / r_k**n."""
    if n < 1:
        raise ValueError(f"sequence index must be a positive integer, got {n}")
    r_k = complex(r_k)
    if r_k == 0:
        raise ValueError("ratio must be nonzero")
    return _root_term(r_k, k) / r_k**n


def subset_prefactor(S: Iterable[int], ratios: RatioSchedule) -> complex:
    """Product of (r_k**k - 1)**(1/k) over k in S."""
    out = 1 + 0j
    for k in S:
        out *= _root_term(ratios.ratio_for(k), k)
    return out


def _elements(S) -> tuple[int, ...]:
    if isinstance(S, IntegerSubset):
        return S.elements
    return tuple(int(k) for k in S)


def _log_factor(f: AnalyticFunctionModel, point: complex) -> complex:
    return cmath.log(evaluate(f, point))


def _exp_checked(log_value: complex) -> complex:
    if log_value.real > 709.0:
        raise DivergentProductError(
            f"product magnitude exp({log_value.real:.3g}) overflows double precision"
        )
    return cmath.exp(log_value)


def sample_points(
    S: Iterable[int], ratios: RatioSchedule, per_index_cap: int, z: complex
) -> Iterator[complex]:
    """Evaluation points of the boxed product, tuples in lexicographic order."""
    ks = _elements(S)
    z = complex(z)
    if not ks:
        yield z
        return
    rows = [
        [sampling_point(k, n, ratios.ratio_for(k)) for n in range(1, per_index_cap + 1)]
        for k in ks
    ]
    for combo in itertools.product(*rows):
        coef = 1 + 0j
        for x in combo:
            coef *= x
        yield coef * z


def _log_box(f, ks, z, ratios, cap) -> complex:
    """Log of the product with every index capped at ``cap``."""
    d = len(ks)
    if ratios.is_common:
        r = ratios.common_ratio
        prefactor = subset_prefactor(ks, ratios)
        total = 0j
        scale = prefactor * z / r**d
        for n in range(d, d * cap + 1):
            count = bounded_composition_count(n, d, cap)
            total += count * _log_factor(f, scale)
            scale /= r
        return total
    if cap**d > MAX_DIRECT_TUPLES:
        raise ValueError(
            f"direct product over {cap}**{d} tuples is infeasible; use a common ratio"
        )
    total = 0j
    for point in sample_points(ks, ratios, cap, z):
        total += _log_factor(f, point)
    return total


def _log_budget(f, ks, z, ratios, budget, start: int | None = None) -> complex:
    """Log of the product truncated at total exponent sum <= ``budget``.

    ``start`` skips totals below it (used for tail factors); defaults to
    |S|, the smallest possible total.
    """
    d = len(ks)
    lo = d if start is None else max(start, d)
    if budget < lo:
        return 0j
    if ratios.is_common:
        r = ratios.common_ratio
        prefactor = subset_prefactor(ks, ratios)
        total = 0j
        scale = prefactor * z / r**lo
        for n in range(lo, budget + 1):
            total += composition_count(n, d) * _log_factor(f, scale)
            scale /= r
        return total

    inverses = [1.0 / ratios.ratio_for(k) for k in ks]
    total = 0j

    def descend(i: int, remaining: int, used_total: int, coef: complex):
        nonlocal total
        inv = inverses[i]
        later_indices = d - i - 1
        coef = coef * inv  # n_i = 1
        used = 1
        while used <= remaining - later_indices:
            if i == d - 1:
                if used_total + used >= lo:
                    total += _log_factor(f, coef * z)
            else:
                descend(i + 1, remaining - used, used_total + used, coef)
            coef *= inv
            used += 1

    descend(0, budget, 0, subset_prefactor(ks, ratios))
    return total


def sampling_product(
    f: AnalyticFunctionModel,
    S: Iterable[int],
    z: complex,
    ratios: RatioSchedule,
    per_index_cap: int,
) -> complex:
    """Product of f over the boxed index grid of the subset S.

    The empty subset is allowed internally and yields f(z).
    """
    ks = _elements(S)
    z = complex(z)
    if not ks:
        return evaluate(f, z)
    if per_index_cap < 1:
        raise ValueError(f"per_index_cap must be positive, got {per_index_cap}")
    if len(set(ks)) != len(ks):
        raise ValueError(f"subset elements must be distinct, got {ks}")
    ratios.validate(ks)
    return _exp_checked(_log_box(f, tuple(sorted(ks)), z, ratios, per_index_cap))


def consolidated_product(
    f: AnalyticFunctionModel,
    S: Iterable[int],
    z: complex,
    r: complex,
    n_max: int,
) -> complex:
    """Common-ratio product collapsed onto one geometric sequence.

    Multiplies ``f(prefactor * z / r**n)`` raised to ``composition_count(n, |S|)``
    for n from |S| to ``n_max``; identical to enumerating every index tuple
    with total exponent at most ``n_max``.
    """
    ks = tuple(sorted(_elements(S)))
    if not ks:
        return evaluate(f, complex(z))
    schedule = RatioSchedule.common(r, entire_function_mode=f.is_entire)
    schedule.validate(ks)
    return _exp_checked(_log_budget(f, ks, complex(z), schedule, n_max))


def log_sampling_quotient(
    f: AnalyticFunctionModel,
    family: Iterable,
    z: complex,
    ratios: RatioSchedule,
    n_max: int,
) -> complex:
    """Log of the quotient over a finite family, factors in the given order."""
    z = complex(z)
    total = 0j
    for S in family:
        ks = tuple(sorted(_elements(S)))
        ratios.validate(ks)
        sign = 1 if len(ks) % 2 else -1  # exponent (-1)**(|S| - 1)
        total += sign * _log_budget(f, ks, z, ratios, n_max)
    return total


def sampling_quotient(
    f: AnalyticFunctionModel,
    family: Iterable,
    z: complex,
    ratios: RatioSchedule,
    n_max: int,
) -> complex:
    """Quotient of odd-size-subset products over even-size-subset products."""
    return _exp_checked(log_sampling_quotient(f, family, z, ratios, n_max))
