"""Exceptions personnalisées pour BAPFactor."""

from .base_exceptions import BapFactorError
from .validation_exceptions import ValidationError, ConfigurationError
from .numerical_exceptions import (
    CapacityError,
    ConvergenceError,
    CertificationError,
    ProtocolError
)

__all__ = [
    "BapFactorError",
    "ValidationError",
    "ConfigurationError",
    "CapacityError",
    "ConvergenceError",
    "CertificationError",
    "ProtocolError"
]
