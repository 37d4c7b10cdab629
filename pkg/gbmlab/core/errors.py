"""
Errors Module

This module provides the exception hierarchy shared by every gbmlab package.
"""

from typing import Optional


class GbmError(Exception):
    """Base exception for gbmlab errors."""
    pass


class ParameterError(GbmError, ValueError):
    """
    A model or configuration value failed validation.

    Attributes:
        field (str): Name of the offending field, if known
    """

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class RadiusOrderError(ParameterError):
    """The within-community radius is smaller than the between-community radius."""

    def __init__(self, r_s: float, r_d: float):
        super().__init__(
            f"radius-order violation: r_s ({r_s}) must be >= r_d ({r_d})",
            field="r_s",
        )


class InfeasibleCellError(ParameterError):
    """An experiment cell asks for r_s above 0.5."""
    pass


class QuadratureConfigError(ParameterError):
    """Invalid quadrature grid or anchor."""
    pass


class OracleCapError(GbmError):
    """Graph too large for the brute-force oracle."""
    pass


class ConfigError(GbmError):
    """Unreadable or malformed experiment configuration."""
    pass


class GraphFormatError(GbmError):
    """Malformed graph dump file."""
    pass
