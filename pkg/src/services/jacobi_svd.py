"""Valeurs singulières par rotations de Jacobi à un côté (Hestenes)."""

import numpy as np
import structlog

from ..exceptions import ConvergenceError
from ..utils.tolerances import JACOBI_OFF_DIAGONAL


class JacobiSingularValues:
    """Calcule les valeurs singulières d'une petite matrice dense.

    Les colonnes sont orthogonalisées deux à deux par rotations planes
    jusqu'à ce que toutes les corrélations relatives passent sous
    ``tol``; les valeurs singulières sont alors les normes des colonnes.
    Le balayage est cyclique dans l'ordre (p, q) lexicographique, donc
    déterministe.

    Attributes:
        max_sweeps: Plafond de balayages complets
        tol: Tolérance sur la corrélation hors-diagonale relative
    """

    def __init__(self, max_sweeps: int = 100, tol: float = JACOBI_OFF_DIAGONAL) -> None:
        self.max_sweeps = max_sweeps
        self.tol = tol
        self.logger = structlog.get_logger(self.__class__.__name__)

    def compute(self, matrix: np.ndarray) -> np.ndarray:
        """Valeurs singulières triées par ordre décroissant.

        Raises:
            ConvergenceError: Si le plafond de balayages est atteint
        """
        U = np.array(matrix, dtype=float, copy=True)
        if U.shape[0] < U.shape[1]:
            U = U.T.copy()
        n = U.shape[1]

        off = 0.0
        for sweep in range(1, self.max_sweeps + 1):
            off = 0.0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    alpha = float(U[:, p] @ U[:, p])
                    beta = float(U[:, q] @ U[:, q])
                    gamma = float(U[:, p] @ U[:, q])
                    if alpha == 0.0 or beta == 0.0:
                        continue
                    correlation = abs(gamma) / np.sqrt(alpha * beta)
                    if correlation <= self.tol:
                        continue
                    off = max(off, correlation)
                    zeta = (beta - alpha) / (2.0 * gamma)
                    t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                    cos = 1.0 / np.sqrt(1.0 + t * t)
                    sin = cos * t
                    up = U[:, p].copy()
                    U[:, p] = cos * up - sin * U[:, q]
                    U[:, q] = sin * up + cos * U[:, q]
            if off == 0.0:
                self.logger.debug("jacobi_converged", sweeps=sweep)
                return np.sort(np.linalg.norm(U, axis=0))[::-1]

        raise ConvergenceError.jacobi_not_converged(self.max_sweeps, off)

    def spectral_norm(self, matrix: np.ndarray) -> float:
        """Plus grande valeur singulière (0 pour une matrice vide ou nulle)."""
        values = self.compute(matrix)
        return float(values[0]) if values.size else 0.0
