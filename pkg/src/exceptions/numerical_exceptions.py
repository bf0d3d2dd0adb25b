"""Exceptions liées aux calculs numériques et aux certifications."""

from typing import Any, Dict, Optional
from .base_exceptions import BapFactorError


class CapacityError(BapFactorError):
    """Exception pour dépassement du plafond d'énumération.

    Les cas exacts de la norme d'opérateur (sommets du cube, motifs de
    signes) et l'énumération des sommets de sections sont exponentiels;
    au-delà du plafond, le calcul est refusé explicitement.

    Attributes:
        dimension: Dimension d'énumération demandée
        cap: Plafond configuré (BAPFACTOR_MAX_ENUM_DIM)
    """

    exit_code = 2

    def __init__(self, message: str, dimension: int, cap: int, **kwargs) -> None:
        super().__init__(
            message,
            error_code=kwargs.pop("error_code", "ENUMERATION_CAPACITY_EXCEEDED"),
            **kwargs
        )
        self.dimension = dimension
        self.cap = cap
        self.context.update({"dimension": dimension, "cap": cap})

    @classmethod
    def enumeration_too_large(cls, what: str, dimension: int, cap: int) -> "CapacityError":
        """Erreur d'énumération trop grande.

        Args:
            what: Nature de l'énumération (sign_vertices, section_vertices, ...)
            dimension: Dimension effective d'énumération
            cap: Plafond configuré

        Returns:
            Instance CapacityError appropriée
        """
        return cls(
            f"Énumération {what} de dimension {dimension} au-delà du plafond {cap}",
            dimension=dimension,
            cap=cap,
            context={"enumeration": what}
        )


class ConvergenceError(BapFactorError):
    """Exception pour algorithmes itératifs n'atteignant pas leur critère.

    Attributes:
        iterations: Nombre d'itérations effectuées
        last_iterate: Dernier itéré (pour diagnostic)
        residuals: Résidus des invariants au dernier itéré
    """

    exit_code = 1

    def __init__(
        self,
        message: str,
        iterations: Optional[int] = None,
        last_iterate: Optional[Any] = None,
        residuals: Optional[Dict[str, Any]] = None,
        **kwargs
    ) -> None:
        super().__init__(
            message,
            error_code=kwargs.pop("error_code", "CONVERGENCE_ERROR"),
            **kwargs
        )
        self.iterations = iterations
        self.last_iterate = last_iterate
        self.residuals = residuals or {}
        self.context.update({"iterations": iterations, "residuals": self.residuals})

    @classmethod
    def auerbach_stalled(
        cls,
        cycles: int,
        last_iterate: Any,
        residuals: Dict[str, Any]
    ) -> "ConvergenceError":
        """Système d'Auerbach non stationnaire après le plafond de cycles."""
        return cls(
            f"Système d'Auerbach non certifié après {cycles} cycles",
            iterations=cycles,
            last_iterate=last_iterate,
            residuals=residuals,
            error_code="AUERBACH_NOT_STATIONARY"
        )

    @classmethod
    def jacobi_not_converged(cls, sweeps: int, off_diagonal: float) -> "ConvergenceError":
        """Rotations de Jacobi non convergées après le plafond de balayages."""
        return cls(
            f"Jacobi non convergé après {sweeps} balayages (hors-diagonale {off_diagonal:.3e})",
            iterations=sweeps,
            residuals={"off_diagonal": off_diagonal},
            error_code="JACOBI_NOT_CONVERGED"
        )

    @classmethod
    def simplex_failed(cls, reason: str, iterations: int) -> "ConvergenceError":
        """Simplexe interrompu (problème non borné ou plafond d'itérations)."""
        return cls(
            f"Simplexe interrompu: {reason}",
            iterations=iterations,
            error_code="SIMPLEX_FAILED",
            context={"reason": reason}
        )

    @classmethod
    def linalg_failure(cls, stage: str, reason: str) -> "ConvergenceError":
        """Échec numpy.linalg (SVD, moindres carrés, déterminant) sur une entrée dégénérée."""
        return cls(
            f"Échec d'algèbre linéaire pendant {stage}: {reason}",
            error_code="LINALG_FAILURE",
            context={"stage": stage, "reason": reason}
        )


class CertificationError(BapFactorError):
    """Exception pour certificat BAP impossible à émettre.

    Attributes:
        index: Indice N (1-based) de l'approximant fautif, si applicable
    """

    exit_code = 1

    def __init__(self, message: str, index: Optional[int] = None, **kwargs) -> None:
        super().__init__(
            message,
            error_code=kwargs.pop("error_code", "CERTIFICATION_FAILED"),
            **kwargs
        )
        self.index = index
        self.context["index"] = index

    @classmethod
    def norm_bound_violated(cls, index: int, norm: float, bound: float) -> "CertificationError":
        """Un approximant R_N dépasse C·‖T‖."""
        return cls(
            f"‖R_{index}‖ = {norm:.17g} > C·‖T‖ = {bound:.17g}",
            index=index,
            error_code="APPROXIMANT_NORM_BOUND_VIOLATED",
            context={"norm": norm, "bound": bound}
        )

    @classmethod
    def epsilon_not_reached(cls, eps: float, final_residual: float) -> "CertificationError":
        """Le résidu final reste au-dessus d'un epsilon demandé."""
        return cls(
            f"ε = {eps:.17g} non atteint (résidu final {final_residual:.17g})",
            error_code="EPSILON_NOT_REACHED",
            context={"eps": eps, "final_residual": final_residual}
        )


class ProtocolError(BapFactorError):
    """Exception pour un oracle BAP qui viole son contrat.

    Attributes:
        index: Requête N (1-based) dont la réponse est invalide
    """

    exit_code = 1

    def __init__(self, message: str, index: Optional[int] = None, **kwargs) -> None:
        super().__init__(
            message,
            error_code=kwargs.pop("error_code", "ORACLE_PROTOCOL_VIOLATION"),
            **kwargs
        )
        self.index = index
        self.context["index"] = index
