"""Exception types shared across the package."""
from __future__ import annotations


class CrosscapError(Exception):
    """Base class for all package-specific failures."""


class JetDomainError(CrosscapError, ValueError):
    """An operation on truncated series was called outside its domain."""


class SingularJetError(JetDomainError):
    """sqrt or recip of a series whose constant term is not positive."""


class NotACrossCapError(CrosscapError):
    """The map germ at the origin fails the cross cap criterion."""

    def __init__(self, message: str, delta: float = 0.0, fv_norm: float = 0.0):
        super().__init__(message)
        self.delta = delta
        self.fv_norm = fv_norm


class SingularPointError(CrosscapError):
    """Pointwise curvature data requested at a degenerate surface point."""


class NormalFormError(CrosscapError):
    """The order-by-order reduction failed to cancel a residual."""

    def __init__(self, message: str, degree: int):
        super().__init__(message)
        self.degree = degree


class ChartError(CrosscapError):
    """A spherical curve was sampled outside its arc-length chart."""


class MetricError(CrosscapError):
    """A metric triple is not the pull-back of a cross cap in admissible form."""


class SpecFormatError(CrosscapError):
    """A surface specification file is malformed."""
