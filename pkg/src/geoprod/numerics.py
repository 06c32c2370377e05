"""Branch-safe complex primitives used by every other module.

Everything here is pure and deterministic: plain ``complex``/``float``
values, no global state, safe to share between threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DivergentProductError,
    DomainError,
    ExtrapolationOrderError,
    ZeroFunctionValueError,
)

__all__ = [
    "LogProduct",
    "accumulate",
    "extrapolate_limit",
    "limit_schedule",
    "principal_root",
]


def principal_root(w: complex, k: int) -> complex:
    """Principal k-th root of ``w``: the branch with arg in (-pi/k, pi/k].

    For real positive ``w`` this is the real positive root.
    """
    if k < 1:
        raise ValueError(f"root order must be a positive integer, got {k}")
    w = complex(w)
    if w == 0:
        raise DomainError("principal root of zero is undefined")
    if k == 1:
        return w
    if w.imag == 0.0 and w.real > 0.0:
        return complex(w.real ** (1.0 / k), 0.0)
    return cmath.exp(cmath.log(w) / k)


@dataclass(frozen=True)
class LogProduct:
    """Running product held as log-magnitude plus an unwrapped phase.

    The phase is accumulated factor by factor (principal argument of each
    factor, times its exponent) and never reduced mod 2*pi, so logarithms
    of products stay single-valued.  Multiplying N factors and then
    exponentiating matches the direct product to ~1e-12 relative error
    whenever the direct product stays inside floating range, and remains
    finite far outside it.
    """

    log_magnitude: float = 0.0
    phase: float = 0.0
    factor_count: int = 0

    def times(self, factor: complex, exponent: int = 1, point: complex | None = None) -> "LogProduct":
        """Return the product extended by ``factor**exponent``."""
        factor = complex(factor)
        if factor == 0:
            raise ZeroFunctionValueError("function value vanished", point=point)
        return LogProduct(
            self.log_magnitude + exponent * math.log(abs(factor)),
            self.phase + exponent * cmath.phase(factor),
            self.factor_count + 1,
        )

    def log_value(self) -> complex:
        return complex(self.log_magnitude, self.phase)

    def value(self) -> complex:
        if self.log_magnitude > 709.0:
            raise DivergentProductError(
                f"product magnitude exp({self.log_magnitude:.3g}) overflows double precision"
            )
        return cmath.exp(complex(self.log_magnitude, self.phase))


def accumulate(acc: LogProduct, factor: complex, exponent: int = 1) -> LogProduct:
    """Multiply ``factor**exponent`` into the log-space accumulator."""
    return acc.times(factor, exponent)


def limit_schedule(j_start: int = 3, j_stop: int = 10) -> list[float]:
    """Default ratio schedule approaching 1 from above: r_j = 1 + 2**-j."""
    if j_stop < j_start:
        raise ValueError("j_stop must be >= j_start")
    return [1.0 + 2.0 ** -j for j in range(j_start, j_stop + 1)]


def extrapolate_limit(samples: Sequence[tuple[float, complex]]) -> tuple[complex, float]:
    """Extrapolate values sampled at ratios r -> 1+ to the r = 1 limit.

    ``samples`` are (r, value) pairs with strictly decreasing r > 1.
    Neville elimination in the offsets r - 1, evaluated at offset 0.
    Returns (limit, error_estimate) where the estimate is the absolute
    difference between the two highest elimination orders.
    """
    if len(samples) < 3:
        raise ExtrapolationOrderError(
            f"need at least 3 samples to extrapolate, got {len(samples)}"
        )
    ratios = [float(r) for r, _ in samples]
    for a, b in zip(ratios, ratios[1:]):
        if not a > b:
            raise ExtrapolationOrderError(
                f"ratios must decrease strictly toward 1, got {a} before {b}"
            )
    if ratios[-1] <= 1.0:
        raise ExtrapolationOrderError(f"ratios must stay above 1, got {ratios[-1]}")

    offsets = [r - 1.0 for r in ratios]
    tableau = [complex(v) for _, v in samples]
    previous_order = tableau[0]
    for order in range(1, len(tableau)):
        for i in range(len(tableau) - order):
            x_lo, x_hi = offsets[i], offsets[i + order]
            tableau[i] = (x_lo * tableau[i + 1] - x_hi * tableau[i]) / (x_lo - x_hi)
        if order == len(tableau) - 2:
            previous_order = tableau[0]
    value = tableau[0]
    return value, abs(value - previous_order)
