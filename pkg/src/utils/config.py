"""Configuration centralisée pour BAPFactor via variables d'environnement."""

import os
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Any, Dict, Optional

import structlog
from dotenv import load_dotenv

from ..exceptions import ConfigurationError


@dataclass
class Config:
    """Configuration centralisée du système BAPFactor.

    Cette classe récupère les paramètres d'exécution depuis les variables
    d'environnement (avec support d'un fichier .env) et les valide. Les
    tolérances numériques fixes ne sont pas configurables: voir
    ``src.utils.tolerances``.

    Attributes:
        max_enum_dim: Plafond des énumérations exponentielles (signes, sommets)
        auerbach_max_cycles: Plafond de cycles de la montée par coordonnées
        jacobi_max_sweeps: Plafond de balayages des rotations de Jacobi
        test_vector_count: Nombre de vecteurs test tirés par scénario
        y_sample_count: Nombre d'éléments de Y tirés pour la contraction de j
        monotonicity_samples: Nombre de suites de coefficients pour la monotonie
        max_workers: Nombre de threads pour le traitement des blocs
        log_level: Niveau de logging
        environment: Environnement (dev, test, prod)

    Examples:
        >>> config = Config.from_env()
        >>> config.validate()
        >>> print(config.max_enum_dim)
        20
    """

    max_enum_dim: int = 20
    auerbach_max_cycles: int = 500
    jacobi_max_sweeps: int = 100
    test_vector_count: int = 500
    y_sample_count: int = 500
    monotonicity_samples: int = 100
    max_workers: int = 1
    log_level: str = "INFO"
    environment: str = "dev"

    @classmethod
    def from_env(cls, env_file: Optional[str] = None) -> "Config":
        """Crée la configuration à partir des variables d'environnement.

        Variables d'environnement supportées:
        - BAPFACTOR_MAX_ENUM_DIM
        - BAPFACTOR_AUERBACH_MAX_CYCLES
        - BAPFACTOR_JACOBI_MAX_SWEEPS
        - BAPFACTOR_TEST_VECTORS
        - BAPFACTOR_Y_SAMPLES
        - BAPFACTOR_MONOTONICITY_SAMPLES
        - BAPFACTOR_MAX_WORKERS
        - LOG_LEVEL
        - ENVIRONMENT

        Args:
            env_file: Fichier .env optionnel (par défaut: recherche du .env courant)

        Returns:
            Instance Config configurée

        Raises:
            ConfigurationError: Si une valeur n'est pas convertible
        """
        load_dotenv(env_file, override=False)
        logger = structlog.get_logger("Config")

        try:
            config = cls(
                max_enum_dim=int(os.getenv("BAPFACTOR_MAX_ENUM_DIM", "20")),
                auerbach_max_cycles=int(os.getenv("BAPFACTOR_AUERBACH_MAX_CYCLES", "500")),
                jacobi_max_sweeps=int(os.getenv("BAPFACTOR_JACOBI_MAX_SWEEPS", "100")),
                test_vector_count=int(os.getenv("BAPFACTOR_TEST_VECTORS", "500")),
                y_sample_count=int(os.getenv("BAPFACTOR_Y_SAMPLES", "500")),
                monotonicity_samples=int(os.getenv("BAPFACTOR_MONOTONICITY_SAMPLES", "100")),
                max_workers=int(os.getenv("BAPFACTOR_MAX_WORKERS", "1")),
                log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
                environment=os.getenv("ENVIRONMENT", "dev").lower()
            )
        except ValueError as e:
            raise ConfigurationError(
                f"Erreur de conversion des variables d'environnement: {e}",
                error_code="ENV_VAR_CONVERSION_ERROR"
            )

        logger.debug(
            "config_loaded_from_env",
            environment=config.environment,
            max_enum_dim=config.max_enum_dim,
            max_workers=config.max_workers
        )
        return config

    def validate(self) -> None:
        """Valide la cohérence de la configuration.

        Raises:
            ConfigurationError: Si la configuration est incohérente
        """
        errors = []

        if not 1 <= self.max_enum_dim <= 30:
            errors.append("BAPFACTOR_MAX_ENUM_DIM: Doit être entre 1 et 30")

        if self.auerbach_max_cycles <= 0:
            errors.append("BAPFACTOR_AUERBACH_MAX_CYCLES: Doit être positif")

        if self.jacobi_max_sweeps <= 0:
            errors.append("BAPFACTOR_JACOBI_MAX_SWEEPS: Doit être positif")

        if self.test_vector_count <= 0:
            errors.append("BAPFACTOR_TEST_VECTORS: Doit être positif")

        if self.y_sample_count <= 0:
            errors.append("BAPFACTOR_Y_SAMPLES: Doit être positif")

        if self.monotonicity_samples <= 0:
            errors.append("BAPFACTOR_MONOTONICITY_SAMPLES: Doit être positif")

        if self.max_workers <= 0:
            errors.append("BAPFACTOR_MAX_WORKERS: Doit être positif")

        valid_log_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if self.log_level not in valid_log_levels:
            errors.append(f"LOG_LEVEL: Niveau invalide (valides: {valid_log_levels})")

        valid_environments = ["dev", "test", "prod"]
        if self.environment not in valid_environments:
            errors.append(f"ENVIRONMENT: Environnement invalide (valides: {valid_environments})")

        if errors:
            raise ConfigurationError(
                f"Configuration invalide: {'; '.join(errors)}",
                error_code="CONFIG_VALIDATION_FAILED",
                context={"validation_errors": errors}
            )

    def to_dict(self) -> Dict[str, Any]:
        """Conversion en dictionnaire pour logging et rapports."""
        return asdict(self)


@lru_cache(maxsize=1)
def get_config() -> Config:
    """Configuration partagée du processus, chargée une seule fois.

    Returns:
        Config validée
    """
    config = Config.from_env()
    config.validate()
    return config


def reset_config() -> None:
    """Oublie la configuration partagée (tests, changement d'environnement)."""
    get_config.cache_clear()
