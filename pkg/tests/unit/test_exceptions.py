"""Tests unitaires pour la hiérarchie d'exceptions et les codes de sortie."""

import json

import numpy as np
import pytest

from src.exceptions import (
    BapFactorError,
    CapacityError,
    CertificationError,
    ConfigurationError,
    ConvergenceError,
    ProtocolError,
    ValidationError,
)


class TestExitCodes:

    @pytest.mark.parametrize("error,code", [
        (ValidationError("x"), 2),
        (ConfigurationError("x"), 2),
        (CapacityError("x", dimension=25, cap=20), 2),
        (ConvergenceError("x"), 1),
        (CertificationError("x"), 1),
        (ProtocolError("x"), 1),
    ])
    def test_family_exit_code(self, error, code):
        assert isinstance(error, BapFactorError)
        assert error.exit_code == code


class TestConstructors:

    def test_partial_sum_context(self):
        error = ValidationError.partial_sum_bound_violated(3, 2.5, 1.0)
        assert error.error_code == "PARTIAL_SUM_BOUND_VIOLATED"
        assert error.context["prefix_length"] == 3
        assert "[PARTIAL_SUM_BOUND_VIOLATED]" in str(error)

    def test_capacity_context(self):
        error = CapacityError.enumeration_too_large("sign_vertices", 25, 20)
        assert error.context == {"enumeration": "sign_vertices", "dimension": 25, "cap": 20}

    def test_certification_index(self):
        error = CertificationError.norm_bound_violated(4, 3.0, 2.0)
        assert error.index == 4
        assert error.context["index"] == 4

    def test_epsilon_not_reached_has_no_index(self):
        assert CertificationError.epsilon_not_reached(0.1, 0.5).index is None

    def test_convergence_residuals(self):
        error = ConvergenceError.jacobi_not_converged(100, 1e-3)
        assert error.iterations == 100
        assert error.residuals == {"off_diagonal": 1e-3}

    def test_input_file_not_found(self):
        error = ConfigurationError.input_file_not_found("scenario.json")
        assert error.context["file_path"] == "scenario.json"


class TestSerialization:

    def test_to_dict_is_json_serializable(self):
        error = ConvergenceError.auerbach_stalled(
            12, np.eye(2), {"dual_norm": np.float64(0.5), "history": (1.0, 2.0)}
        )
        data = error.to_dict()
        json.dumps(data)
        assert data["context"]["residuals"] == {"dual_norm": 0.5, "history": [1.0, 2.0]}
        assert data["exit_code"] == 1

    def test_to_dict_excludes_timestamp(self):
        assert "timestamp" not in ValidationError("x").to_dict()

    def test_add_context_chains(self):
        error = ProtocolError("oracle", index=2).add_context("eps", 0.25)
        assert error.context == {"index": 2, "eps": 0.25}
