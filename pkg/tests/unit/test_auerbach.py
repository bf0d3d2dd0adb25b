"""Tests unitaires pour les systèmes d'Auerbach."""

from dataclasses import replace
from unittest.mock import MagicMock

import numpy as np
import pytest

from src.core.auerbach import auerbach_projections, auerbach_system, verify_auerbach
from src.core.space import norm
from src.exceptions import ConvergenceError
from src.models.normed_space import NormedSpace, NormTag, SubspaceBasis

HEXAGON_COLUMNS = np.array([[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def grid_max_det(sub: SubspaceBasis, count: int = 720) -> float:
    """max |det(t, u)| sur les paires de points de la sphère unité de la section."""
    angles = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    t = np.vstack([np.cos(angles), np.sin(angles)])
    t = t / np.linalg.norm(sub.columns @ t, ord=sub.space.norm_tag.ord, axis=0)
    dets = np.outer(t[0], t[1]) - np.outer(t[1], t[0])
    return float(np.max(np.abs(dets)))


class TestAuerbachSystem:
    """Montée de déterminant et invariants du système."""

    def test_full_cube_is_standard_basis(self):
        space = NormedSpace(3, NormTag.LINF)
        system = auerbach_system(SubspaceBasis(np.eye(3), space))
        assert system.det_value == pytest.approx(1.0)
        np.testing.assert_allclose(np.column_stack([e.coords for e in system.points]), np.eye(3), atol=1e-12)
        np.testing.assert_allclose(np.vstack([f.coords for f in system.cofunctionals]), np.eye(3), atol=1e-12)

    def test_one_dimensional_subspace(self):
        space = NormedSpace(3, NormTag.L1)
        sub = SubspaceBasis(np.array([[1.0], [2.0], [0.0]]), space)
        system = auerbach_system(sub)
        e, f = system.points[0], system.cofunctionals[0]
        assert norm(space, e) == pytest.approx(1.0)
        assert f(e) == pytest.approx(1.0)
        np.testing.assert_allclose(e.coords, [1.0 / 3.0, 2.0 / 3.0, 0.0])

    def test_hexagon_matches_grid_oracle(self, linf3):
        sub = SubspaceBasis(HEXAGON_COLUMNS, linf3)
        system = auerbach_system(sub)
        assert verify_auerbach(system).passed
        assert system.det_value == pytest.approx(grid_max_det(sub), abs=5e-2)

    def test_euclidean_system_is_orthonormal(self):
        space = NormedSpace(4, NormTag.L2)
        sub = SubspaceBasis(np.random.default_rng(1).standard_normal((4, 3)), space)
        system = auerbach_system(sub)
        points = np.column_stack([e.coords for e in system.points])
        np.testing.assert_allclose(points.T @ points, np.eye(3), atol=1e-12)
        assert system.cycles == 0

    def test_det_history_is_non_decreasing(self):
        space = NormedSpace(5, NormTag.L1)
        sub = SubspaceBasis(np.random.default_rng(5).standard_normal((5, 3)), space)
        system = auerbach_system(sub)
        history = np.array(system.det_history)
        assert np.all(np.diff(history) >= -1e-12 * history[:-1])

    @pytest.mark.parametrize("seed", range(20))
    def test_random_subspaces_certified(self, seed):
        rng = np.random.default_rng(seed)
        tag = list(NormTag)[seed % 3]
        ambient = int(rng.integers(2, 6))
        k = int(rng.integers(1, min(ambient, 3) + 1))
        sub = SubspaceBasis(rng.standard_normal((ambient, k)), NormedSpace(ambient, tag))
        report = verify_auerbach(auerbach_system(sub))
        assert report.passed, report.to_dict()

    @pytest.mark.parametrize("tag", list(NormTag))
    @pytest.mark.parametrize("ambient,k", [(6, 4), (7, 3), (8, 2), (8, 4)])
    def test_larger_subspaces_certified(self, tag, ambient, k):
        rng = np.random.default_rng(100 * ambient + k)
        sub = SubspaceBasis(rng.standard_normal((ambient, k)), NormedSpace(ambient, tag))
        system = auerbach_system(sub)
        report = verify_auerbach(system)
        assert report.passed, report.to_dict()
        assert system.dim == k

    def test_deterministic(self, linf3):
        sub = SubspaceBasis(np.random.default_rng(2).standard_normal((3, 2)), linf3)
        first, second = auerbach_system(sub), auerbach_system(sub)
        np.testing.assert_array_equal(first.coordinates, second.coordinates)

    def test_restart_then_convergence_error(self, linf3, mocker):
        stalled = MagicMock(cycles=7, coordinates=np.eye(2))
        ascend = mocker.patch(
            "src.core.auerbach._ascend",
            return_value=(stalled, {"unit_norm": 0.0, "biorthogonality": 0.0, "dual_norm": 0.5})
        )
        with pytest.raises(ConvergenceError) as exc_info:
            auerbach_system(SubspaceBasis(HEXAGON_COLUMNS, linf3))
        assert ascend.call_count == 2
        assert ascend.call_args.kwargs["restarted"] is True
        assert exc_info.value.error_code == "AUERBACH_NOT_STATIONARY"
        assert exc_info.value.residuals["dual_norm"] == 0.5


class TestAuerbachProjections:
    """Opérateurs B_j = e_j* ⊗ e_j."""

    def test_one_dimensional_identity_on_line(self):
        space = NormedSpace(2, NormTag.LINF)
        sub = SubspaceBasis(np.array([[2.0], [1.0]]), space)
        (B,) = auerbach_projections(auerbach_system(sub))
        np.testing.assert_allclose(B.matrix @ np.array([2.0, 1.0]), [2.0, 1.0], atol=1e-12)

    def test_euclidean_full_space_sums_to_identity(self):
        space = NormedSpace(3, NormTag.L2)
        projections = auerbach_projections(auerbach_system(SubspaceBasis(np.eye(3), space)))
        total = sum(B.matrix for B in projections)
        np.testing.assert_allclose(total, np.eye(3), atol=1e-12)

    def test_sum_is_identity_on_subspace(self, linf3):
        sub = SubspaceBasis(HEXAGON_COLUMNS, linf3)
        total = sum(B.matrix for B in auerbach_projections(auerbach_system(sub)))
        coefficients = np.random.default_rng(11).standard_normal((2, 100))
        vectors = sub.columns @ coefficients
        np.testing.assert_allclose(total @ vectors, vectors, atol=1e-9)


class TestVerifyAuerbach:
    """Audit des invariants (jamais d'exception)."""

    @pytest.fixture
    def system(self, linf2):
        return auerbach_system(SubspaceBasis(np.eye(2), linf2))

    def test_valid_system(self, system):
        report = verify_auerbach(system)
        assert report.passed
        assert report.max_residual < 1e-7

    def test_scaled_point(self, system):
        broken = replace(system, points=(system.points[0] * 2.0, system.points[1]))
        report = verify_auerbach(broken)
        assert report.unit_norm_residuals[0] == pytest.approx(1.0)
        assert not report.passed

    def test_perturbed_cofunctional(self, system, linf2):
        perturbed = linf2.functional(system.cofunctionals[1].coords + np.array([0.0, 1e-3]))
        broken = replace(system, cofunctionals=(system.cofunctionals[0], perturbed))
        report = verify_auerbach(broken)
        assert report.biorthogonality_residual == pytest.approx(1e-3, rel=1e-6)
        assert not report.passed
