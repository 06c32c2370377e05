"""Exception types shared across the package."""


class GeoprodError(Exception):
    """Base class for all library errors."""


class DomainError(GeoprodError):
    """An argument or evaluation point lies outside the valid domain."""


class ZeroFunctionValueError(DomainError):
    """A sampled function value vanished; carries the offending point."""

    def __init__(self, message: str, point=None):
        if point is not None:
            message = f"{message} at evaluation point {point!r}"
        super().__init__(message)
        self.point = point


class DegenerateRatioError(GeoprodError):
    """A ratio satisfies r_k**k == 1, collapsing the sampling sequence."""


class RatioConstraintError(GeoprodError):
    """A ratio violates |r_k| > 1 or Re(r_k**k) >= 1/2."""


class ExtrapolationOrderError(GeoprodError):
    """Limit extrapolation needs >= 3 samples with ratios decreasing to 1."""


class DivergentProductError(GeoprodError):
    """A running product left the range where results are meaningful."""


class ConfigError(GeoprodError):
    """Bad command-line or config-file input (CLI exit code 2)."""
