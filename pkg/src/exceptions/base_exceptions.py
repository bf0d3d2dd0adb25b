"""Exceptions de base pour BAPFactor."""

from typing import Optional, Dict, Any
import traceback
from datetime import datetime, timezone


class BapFactorError(Exception):
    """Exception de base pour toutes les erreurs BAPFactor.

    Cette classe fournit une base commune pour toutes les exceptions du
    système, avec contexte structuré pour le logging et code de sortie CLI.

    Attributes:
        message: Message d'erreur principal
        error_code: Code d'erreur pour catégorisation
        context: Contexte additionnel (indices, normes, résidus, etc.)
        timestamp: Horodatage de l'erreur
        exit_code: Code de sortie CLI associé à cette famille d'erreurs

    Examples:
        >>> try:
        ...     raise BapFactorError(
        ...         "Erreur de calcul",
        ...         error_code="CALC_001",
        ...         context={"stage": "splitting", "block": 2}
        ...     )
        ... except BapFactorError as e:
        ...     print(f"Erreur {e.error_code}: {e}")
        Erreur CALC_001: [CALC_001] Erreur de calcul
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        context: Optional[Dict[str, Any]] = None
    ) -> None:
        """Initialise l'exception avec métadonnées enrichies.

        Args:
            message: Message d'erreur descriptif
            error_code: Code d'erreur pour catégorisation
            context: Dictionnaire avec contexte additionnel
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or "UNKNOWN"
        self.context = dict(context or {})
        self.timestamp = datetime.now(timezone.utc)
        self.traceback_info = traceback.format_exc()

    def __str__(self) -> str:
        """Représentation string enrichie de l'erreur."""
        return f"[{self.error_code}] {self.message}"

    def __repr__(self) -> str:
        """Représentation détaillée pour debugging."""
        return (
            f"{self.__class__.__name__}("
            f"message='{self.message}', "
            f"error_code='{self.error_code}', "
            f"timestamp='{self.timestamp.isoformat()}'"
            f")"
        )

    def to_dict(self) -> Dict[str, Any]:
        """Sérialise l'exception en dictionnaire pour logging et rapports.

        Returns:
            Dictionnaire avec les métadonnées de l'erreur (sans horodatage,
            pour que les rapports restent reproductibles)
        """
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "error_code": self.error_code,
            "context": {key: _jsonable(value) for key, value in self.context.items()},
            "exit_code": self.exit_code
        }

    def add_context(self, key: str, value: Any) -> "BapFactorError":
        """Ajoute du contexte à l'exception existante.

        Args:
            key: Clé du contexte
            value: Valeur du contexte

        Returns:
            Self pour chaînage fluent
        """
        self.context[key] = value
        return self


def _jsonable(value: Any) -> Any:
    """Convertit les valeurs numpy / séquences en types JSON natifs."""
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)
