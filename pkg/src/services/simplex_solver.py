"""Simplexe dense à règle de Bland pour les petits programmes linéaires."""

from dataclasses import dataclass

import numpy as np
import structlog

from ..exceptions import ConvergenceError, ValidationError
from ..utils.tolerances import TOL_LP


@dataclass(frozen=True)
class LPSolution:
    """Solution optimale d'un programme linéaire.

    Attributes:
        x: Point optimal (variables de décision uniquement)
        value: Valeur optimale c·x
        iterations: Nombre de pivots effectués
    """
    x: np.ndarray
    value: float
    iterations: int


class DenseSimplexSolver:
    """Résout max c·x sous A x ≤ b, x ≥ 0, avec b ≥ 0.

    La base initiale est formée des variables d'écart, ce qui exige b ≥ 0
    (toujours le cas pour les sections de boules unité). La règle de Bland
    garantit l'absence de cyclage: variable entrante de plus petit indice
    à coût réduit négatif, et, à rapport égal, variable sortante de plus
    petit indice. La sortie est donc déterministe.

    Attributes:
        tol: Tolérance sur les coûts réduits et les pivots
        max_iterations: Plafond de pivots

    Examples:
        >>> solver = DenseSimplexSolver()
        >>> sol = solver.maximize(np.array([1.0]), np.array([[1.0]]), np.array([2.0]))
        >>> sol.value
        2.0
    """

    def __init__(self, tol: float = TOL_LP, max_iterations: int = 10_000) -> None:
        self.tol = tol
        self.max_iterations = max_iterations
        self.logger = structlog.get_logger(self.__class__.__name__)

    def maximize(self, c: np.ndarray, A: np.ndarray, b: np.ndarray) -> LPSolution:
        """Maximise c·x sur le polyèdre {A x ≤ b, x ≥ 0}.

        Args:
            c: Coefficients de l'objectif (n)
            A: Matrice des contraintes (m × n)
            b: Second membre (m), composantes positives ou nulles

        Returns:
            LPSolution au sommet optimal

        Raises:
            ValidationError: Dimensions incohérentes ou b non positif
            ConvergenceError: Problème non borné ou plafond de pivots atteint
        """
        c = np.asarray(c, dtype=float)
        A = np.atleast_2d(np.asarray(A, dtype=float))
        b = np.asarray(b, dtype=float)
        m, n = A.shape
        if c.shape != (n,) or b.shape != (m,):
            raise ValidationError.dimension_mismatch("linear_program", (m, n), (b.shape, c.shape))
        if np.any(b < 0):
            raise ValidationError.value_out_of_range("rhs", float(b.min()), min_value=0)

        tableau = np.zeros((m + 1, n + m + 1))
        tableau[:m, :n] = A
        tableau[:m, n:n + m] = np.eye(m)
        tableau[:m, -1] = b
        tableau[m, :n] = -c
        basis = list(range(n, n + m))

        for iteration in range(self.max_iterations):
            reduced = tableau[m, :n + m]
            candidates = np.flatnonzero(reduced < -self.tol)
            if candidates.size == 0:
                x = np.zeros(n + m)
                x[basis] = tableau[:m, -1]
                return LPSolution(x=x[:n], value=float(c @ x[:n]), iterations=iteration)

            entering = int(candidates[0])
            leaving_row = self._ratio_test(tableau[:m, entering], tableau[:m, -1], basis)
            if leaving_row is None:
                raise ConvergenceError.simplex_failed("problème non borné", iteration)
            self._pivot(tableau, leaving_row, entering)
            basis[leaving_row] = entering

        self.logger.warning("simplex_iteration_cap_reached", max_iterations=self.max_iterations)
        raise ConvergenceError.simplex_failed("plafond d'itérations atteint", self.max_iterations)

    def _ratio_test(self, column: np.ndarray, rhs: np.ndarray, basis: list):
        rows = np.flatnonzero(column > self.tol)
        if rows.size == 0:
            return None
        ratios = rhs[rows] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + self.tol]
        # Bland: plus petit indice de variable de base parmi les ex aequo
        return int(min(tied, key=lambda row: basis[row]))

    @staticmethod
    def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
        tableau[row] /= tableau[row, col]
        for r in range(tableau.shape[0]):
            if r != row and tableau[r, col] != 0.0:
                tableau[r] -= tableau[r, col] * tableau[row]
