"""Configuration du logging structuré pour BAPFactor."""

import logging
import sys
import time
from typing import Dict, Any, Optional

import structlog


def setup_logger(
    log_level: str = "INFO",
    environment: str = "dev",
    additional_context: Optional[Dict[str, Any]] = None
) -> structlog.BoundLogger:
    """Configure le système de logging structuré pour BAPFactor.

    Cette fonction configure structlog avec des processeurs adaptés:
    - Formatage JSON en production
    - Formatage console lisible en développement
    - Enrichissement automatique (timestamp, niveau, composant)
    - Sortie sur stderr: stdout reste réservé aux résultats CLI

    Args:
        log_level: Niveau de logging (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        environment: Environnement (dev, test, prod)
        additional_context: Contexte additionnel à inclure dans tous les logs

    Returns:
        Logger structlog configuré

    Examples:
        >>> logger = setup_logger("INFO", "prod")
        >>> logger.info("splitting_built", atoms=5, blocks=2)
    """
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, log_level.upper(), logging.INFO),
        force=True
    )

    processors = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        add_bapfactor_context_processor(additional_context or {})
    ]

    if environment == "prod":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        context_class=dict,
        cache_logger_on_first_use=True,
    )

    logger = structlog.get_logger("bapfactor")
    logger.debug(
        "logging_system_initialized",
        log_level=log_level,
        environment=environment,
        python_version=sys.version.split()[0]
    )
    return logger


def add_bapfactor_context_processor(additional_context: Dict[str, Any]):
    """Processeur pour enrichir chaque événement avec le contexte BAPFactor.

    Args:
        additional_context: Contexte additionnel à inclure

    Returns:
        Processeur structlog
    """
    from .. import __version__

    def processor(logger, method_name, event_dict):
        event_dict.setdefault("system", "bapfactor")
        event_dict.setdefault("version", __version__)
        if additional_context:
            event_dict.update(additional_context)
        return event_dict

    return processor


def get_performance_logger() -> structlog.BoundLogger:
    """Retourne le logger dédié aux durées des étapes du pipeline."""
    return structlog.get_logger("performance")


class PerformanceMetrics:
    """Mesure la durée d'une étape et journalise ses métriques.

    Examples:
        >>> with PerformanceMetrics("auerbach") as metrics:
        ...     system = auerbach_system(basis)
        ...     metrics.add_metric("cycles", system.cycles)
    """

    def __init__(self, operation_name: str, logger: Optional[structlog.BoundLogger] = None):
        """Initialise le collecteur de métriques.

        Args:
            operation_name: Nom de l'opération mesurée
            logger: Logger à utiliser (par défaut: performance logger)
        """
        self.operation_name = operation_name
        self.logger = logger or get_performance_logger()
        self.start_time: Optional[float] = None
        self.duration_ms: Optional[float] = None
        self.metrics: Dict[str, Any] = {}

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.start_time is None:
            return
        self.duration_ms = (time.perf_counter() - self.start_time) * 1000

        log_data = {
            "operation": self.operation_name,
            "duration_ms": round(self.duration_ms, 2),
            "success": exc_type is None
        }
        log_data.update(self.metrics)

        if exc_type:
            log_data.update({
                "error_type": exc_type.__name__,
                "error_message": str(exc_val) if exc_val else None
            })
            self.logger.error("operation_failed", **log_data)
        else:
            self.logger.info("operation_completed", **log_data)

    def add_metric(self, name: str, value: Any) -> None:
        """Ajoute une métrique personnalisée.

        Args:
            name: Nom de la métrique
            value: Valeur de la métrique
        """
        self.metrics[name] = value
