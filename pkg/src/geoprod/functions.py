"""Models of the functions being extended.

A model bundles a complex evaluator with optional log-Taylor data: when
``log f`` has a known power series ``sum c_k z**k`` the coefficients let
other modules reason about the individual multiplicative factors
``exp(c_k z**k)``.  Models are immutable and the evaluator must be pure,
so instances are safe to share.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Collection

from .errors import DomainError, ZeroFunctionValueError

__all__ = [
    "AnalyticFunctionModel",
    "builtin",
    "evaluate",
    "factor_value",
    "parse_complex",
    "poly_exp_model",
    "residual_factor_model",
]

# Values below this magnitude are treated as a vanished function value.
ZERO_VALUE_FLOOR = 1e-300


@dataclass(frozen=True)
class AnalyticFunctionModel:
    """A complex-valued function with f(0) = 1.

    ``log_taylor_coeffs`` holds c_1..c_K of the series for log f when known
    (``None`` marks a black-box model).  ``domain_radius`` is ``math.inf``
    for entire functions.
    """

    evaluator: Callable[[complex], complex] = field(repr=False)
    label: str = "f"
    log_taylor_coeffs: tuple[complex, ...] | None = None
    domain_radius: float = math.inf

    def __post_init__(self):
        if self.log_taylor_coeffs is not None:
            object.__setattr__(
                self, "log_taylor_coeffs", tuple(complex(c) for c in self.log_taylor_coeffs)
            )
        if not self.domain_radius > 0:
            raise ValueError("domain_radius must be positive")
        at_origin = complex(self.evaluator(0j))
        if at_origin != 1:
            raise ValueError(f"model {self.label!r} must satisfy f(0) = 1, got {at_origin!r}")

    @property
    def is_entire(self) -> bool:
        return math.isinf(self.domain_radius)


def evaluate(model: AnalyticFunctionModel, z: complex) -> complex:
    """Evaluate the model at ``z`` with domain and zero-value checks."""
    z = complex(z)
    if not model.is_entire and abs(z) > model.domain_radius:
        raise DomainError(
            f"point {z!r} lies outside the domain of {model.label!r} "
            f"(radius {model.domain_radius})"
        )
    value = complex(model.evaluator(z))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"{model.label!r} returned non-finite value {value!r} at {z!r}")
    if abs(value) < ZERO_VALUE_FLOOR:
        raise ZeroFunctionValueError(f"{model.label!r} vanished", point=z)
    return value


def factor_value(c_k: complex, k: int, z: complex) -> complex:
    """Value of the order-k multiplicative factor exp(c_k * z**k)."""
    if k < 1:
        raise ValueError(f"factor order must be a positive integer, got {k}")
    return cmath.exp(complex(c_k) * complex(z) ** k)


def poly_exp_model(coeffs, label: str | None = None) -> AnalyticFunctionModel:
    """Entire model exp(sum c_k z**k) built from log-Taylor coefficients."""
    coeffs = tuple(complex(c) for c in coeffs)
    if not coeffs:
        raise ValueError("poly-exp model needs at least one coefficient")

    def evaluator(z: complex, _coeffs=coeffs) -> complex:
        z = complex(z)
        total = 0j
        power = 1 + 0j
        for c in _coeffs:
            power *= z
            total += c * power
        return cmath.exp(total)

    if label is None:
        label = "poly-exp:" + ",".join(format_complex(c) for c in coeffs)
    return AnalyticFunctionModel(evaluator, label=label, log_taylor_coeffs=coeffs)


def residual_factor_model(
    model: AnalyticFunctionModel, covered: Collection[int]
) -> AnalyticFunctionModel:
    """Model of the product of factors whose order is outside ``covered``.

    Requires log-Taylor coefficients; orders in ``covered`` are zeroed out.
    """
    if model.log_taylor_coeffs is None:
        raise ValueError(f"{model.label!r} is a black box; residual factors need coefficients")
    covered = set(covered)
    coeffs = tuple(
        0j if (k + 1) in covered else c for k, c in enumerate(model.log_taylor_coeffs)
    )
    return poly_exp_model(coeffs, label=f"{model.label}|residual")


def _bump_evaluator(z: complex) -> complex:
    z = complex(z)
    if z == 0:
        return 1 + 0j
    w = -1.0 / (z * z)
    if w.real > 0.0:
        # exp(-1/z^2) blows up off the real axis; the model is meant for
        # (near-)real arguments where w.real <= 0.
        raise DomainError(f"bump function is unbounded near {z!r}")
    return 1.0 - cmath.exp(w)


def builtin(name: str) -> AnalyticFunctionModel:
    """Look up a named model.

    Known names: ``exp``, ``half-sine`` (1 + sin(x)/2), ``bump``
    (1 - exp(-1/x**2), with value 1 at 0) and ``poly-exp:c1,c2,...`` with
    complex literals written like ``a+bi``.
    """
    if name == "exp":
        return AnalyticFunctionModel(cmath.exp, label="exp", log_taylor_coeffs=(1 + 0j,))
    if name == "half-sine":
        # log f needs f > 0: on the real line 1 + sin(x)/2 >= 1/2 everywhere,
        # and radius 6 comfortably covers the plotting windows we use.
        return AnalyticFunctionModel(
            lambda z: 1.0 + 0.5 * cmath.sin(z), label="half-sine", domain_radius=6.0
        )
    if name == "bump":
        return AnalyticFunctionModel(_bump_evaluator, label="bump")
    if name.startswith("poly-exp:"):
        payload = name[len("poly-exp:"):]
        coeffs = tuple(parse_complex(part) for part in payload.split(","))
        return poly_exp_model(coeffs, label=name)
    raise ValueError(f"unknown builtin function {name!r}")


def parse_complex(text: str) -> complex:
    """Parse complex literals written with an ``i`` suffix: ``a+bi``.

    Accepts plain reals ('2', '-0.5', '1e-3'), pure imaginaries ('2i',
    'i', '-i') and full forms ('1+2i', '0.3-0.25i').
    """
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    s = s.replace("I", "i").replace("J", "i").replace("j", "i")
    if s == "i":
        s = "1i"
    elif s == "-i":
        s = "-1i"
    elif s.endswith("+i"):
        s = s[:-2] + "+1i"
    elif s.endswith("-i"):
        s = s[:-2] + "-1i"
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ValueError(f"invalid complex literal {text!r}") from None


def format_complex(value: complex) -> str:
    """Render a complex value in the same ``a+bi`` style ``parse_complex`` reads."""
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    if value.real == 0:
        return f"{value.imag!r}i"
    sign = "+" if value.imag > 0 else "-"
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"
