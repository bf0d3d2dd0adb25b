"""Utilitaires pour BAPFactor."""

from .config import Config, get_config, reset_config
from .logger import setup_logger, PerformanceMetrics
from .seeding import make_rng, PRNG_NAME

__all__ = [
    "Config",
    "get_config",
    "reset_config",
    "setup_logger",
    "PerformanceMetrics",
    "make_rng",
    "PRNG_NAME"
]
