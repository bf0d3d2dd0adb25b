"""Tests unitaires pour le simplexe dense à règle de Bland."""

import numpy as np
import pytest

from src.exceptions import ConvergenceError, ValidationError
from src.services.simplex_solver import DenseSimplexSolver


class TestDenseSimplexSolver:
    """Programmes linéaires de petite taille à solution connue."""

    @pytest.fixture
    def solver(self) -> DenseSimplexSolver:
        return DenseSimplexSolver()

    def test_single_bound(self, solver):
        solution = solver.maximize(np.array([1.0]), np.array([[1.0]]), np.array([2.0]))
        assert solution.value == 2.0
        np.testing.assert_array_equal(solution.x, [2.0])

    def test_textbook_problem(self, solver):
        # max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36
        c = np.array([3.0, 5.0])
        A = np.array([[1.0, 0.0], [0.0, 2.0], [3.0, 2.0]])
        b = np.array([4.0, 12.0, 18.0])
        solution = solver.maximize(c, A, b)
        assert solution.value == pytest.approx(36.0)
        np.testing.assert_allclose(solution.x, [2.0, 6.0])
        assert solution.iterations >= 1

    def test_zero_objective_stays_at_origin(self, solver):
        solution = solver.maximize(np.zeros(2), np.eye(2), np.ones(2))
        assert solution.value == 0.0
        assert solution.iterations == 0

    def test_degenerate_vertex_terminates(self, solver):
        # contraintes redondantes actives au même sommet
        c = np.array([1.0, 1.0])
        A = np.array([[1.0, 1.0], [1.0, 0.0], [0.0, 1.0], [2.0, 2.0]])
        b = np.array([1.0, 1.0, 1.0, 2.0])
        solution = solver.maximize(c, A, b)
        assert solution.value == pytest.approx(1.0)

    def test_cube_section_support(self, solver):
        # max t₁ sur {|t₁| ≤ 1, |t₁ + t₂| ≤ 1, |t₂| ≤ 1} en variables scindées
        B = np.array([[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        A = np.block([[B, -B], [-B, B]])
        c = np.array([1.0, 0.0, -1.0, 0.0])
        solution = solver.maximize(c, A, np.ones(6))
        assert solution.value == pytest.approx(1.0)

    def test_deterministic(self, solver):
        rng = np.random.default_rng(7)
        A = np.abs(rng.standard_normal((5, 4)))
        c = rng.standard_normal(4)
        first = solver.maximize(c, A, np.ones(5))
        second = solver.maximize(c, A, np.ones(5))
        np.testing.assert_array_equal(first.x, second.x)
        assert first.iterations == second.iterations

    def test_unbounded(self, solver):
        with pytest.raises(ConvergenceError) as exc_info:
            solver.maximize(np.array([1.0, 0.0]), np.array([[0.0, 1.0]]), np.array([1.0]))
        assert exc_info.value.error_code == "SIMPLEX_FAILED"

    def test_iteration_cap(self):
        solver = DenseSimplexSolver(max_iterations=1)
        c = np.array([3.0, 5.0])
        A = np.array([[1.0, 0.0], [0.0, 2.0], [3.0, 2.0]])
        with pytest.raises(ConvergenceError):
            solver.maximize(c, A, np.array([4.0, 12.0, 18.0]))

    def test_negative_rhs_rejected(self, solver):
        with pytest.raises(ValidationError):
            solver.maximize(np.array([1.0]), np.array([[1.0]]), np.array([-1.0]))

    def test_shape_mismatch(self, solver):
        with pytest.raises(ValidationError):
            solver.maximize(np.array([1.0, 2.0]), np.array([[1.0]]), np.array([1.0]))
