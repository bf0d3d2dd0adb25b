"""Exceptions de validation et configuration (code de sortie 2)."""

from typing import Any, List, Optional
from .base_exceptions import BapFactorError


class ValidationError(BapFactorError):
    """Entrée invalide: vecteur, opérateur, scénario ou paramètre CLI.

    Attributes:
        field_name: Champ ou opération en erreur
        field_value: Valeur fautive (sérialisée en texte dans le contexte)
        expected_type: Forme attendue, si pertinente
    """

    exit_code = 2

    def __init__(
        self,
        message: str,
        field_name: Optional[str] = None,
        field_value: Optional[Any] = None,
        expected_type: Optional[str] = None,
        **kwargs
    ) -> None:
        super().__init__(
            message,
            error_code=kwargs.pop("error_code", "VALIDATION_ERROR"),
            **kwargs
        )
        self.field_name = field_name
        self.field_value = field_value
        self.expected_type = expected_type

        self.context.update({
            "field_name": self.field_name,
            "field_value": str(self.field_value) if self.field_value is not None else None,
            "expected_type": self.expected_type
        })

    @classmethod
    def required_field_missing(cls, field_name: str) -> "ValidationError":
        """Champ obligatoire absent ou liste vide."""
        return cls(
            message=f"Champ obligatoire manquant: {field_name}",
            field_name=field_name,
            error_code="REQUIRED_FIELD_MISSING"
        )

    @classmethod
    def value_out_of_range(
        cls,
        field_name: str,
        field_value: Any,
        min_value: Optional[Any] = None,
        max_value: Optional[Any] = None
    ) -> "ValidationError":
        """Valeur hors de [min_value, max_value] (bornes optionnelles).

        Examples:
            >>> ValidationError.value_out_of_range("K", 0.5, min_value=1).error_code
            'VALUE_OUT_OF_RANGE'
        """
        bounds = []
        if min_value is not None:
            bounds.append(f">= {min_value}")
        if max_value is not None:
            bounds.append(f"<= {max_value}")

        return cls(
            message=f"Valeur hors plage pour {field_name}: {field_value} (attendu: {' et '.join(bounds)})",
            field_name=field_name,
            field_value=field_value,
            error_code="VALUE_OUT_OF_RANGE",
            context={"min_value": min_value, "max_value": max_value}
        )

    @classmethod
    def invalid_format(cls, field_name: str, field_value: Any, expected_format: str) -> "ValidationError":
        """Fichier scénario, matrice ou liste CLI mal formé."""
        return cls(
            message=f"Format invalide pour {field_name}: '{field_value}' (attendu: {expected_format})",
            field_name=field_name,
            field_value=field_value,
            error_code="INVALID_FORMAT",
            context={"expected_format": expected_format}
        )

    @classmethod
    def invalid_enum_value(cls, field_name: str, field_value: Any, valid_values: List[str]) -> "ValidationError":
        return cls(
            message=f"Valeur invalide pour {field_name}: '{field_value}' (valeurs valides: {', '.join(valid_values)})",
            field_name=field_name,
            field_value=field_value,
            error_code="INVALID_ENUM_VALUE",
            context={"valid_values": valid_values}
        )

    @classmethod
    def dimension_mismatch(cls, field_name: str, actual: Any, expected: Any) -> "ValidationError":
        """Dimension (ou forme) incompatible avec l'espace annoncé."""
        return cls(
            message=f"Dimension incompatible pour {field_name}: reçu {actual}, attendu {expected}",
            field_name=field_name,
            field_value=actual,
            expected_type=str(expected),
            error_code="DIMENSION_MISMATCH"
        )

    @classmethod
    def space_mismatch(cls, operation: str, left: Any, right: Any) -> "ValidationError":
        """Espaces normés incompatibles pour add, compose, apply, lift..."""
        return cls(
            message=f"Espaces incompatibles pour {operation}: {left} vs {right}",
            field_name=operation,
            error_code="SPACE_MISMATCH",
            context={"left": str(left), "right": str(right)}
        )

    @classmethod
    def partial_sum_bound_violated(cls, prefix_length: int, norm: float, bound: float) -> "ValidationError":
        """Une somme partielle des blocs dépasse K·‖T‖.

        Args:
            prefix_length: Longueur du préfixe fautif (1-based)
            norm: Norme observée de la somme partielle
            bound: Borne K·‖T‖
        """
        return cls(
            message=(
                f"Somme partielle de longueur {prefix_length} de norme {norm:.17g} "
                f"> borne K·‖T‖ = {bound:.17g}"
            ),
            field_name="blocks",
            error_code="PARTIAL_SUM_BOUND_VIOLATED",
            context={"prefix_length": prefix_length, "norm": norm, "bound": bound}
        )


class ConfigurationError(BapFactorError):
    """Variables BAPFACTOR_* invalides ou fichier d'entrée introuvable."""

    exit_code = 2

    def __init__(self, message: str, **kwargs) -> None:
        super().__init__(
            message,
            error_code=kwargs.pop("error_code", "CONFIGURATION_ERROR"),
            **kwargs
        )

    @classmethod
    def input_file_not_found(cls, file_path: str) -> "ConfigurationError":
        return cls(
            message=f"Fichier introuvable: {file_path}",
            error_code="INPUT_FILE_NOT_FOUND",
            context={"file_path": file_path}
        )
