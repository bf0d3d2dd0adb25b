"""Fixtures partagées pour les tests BAPFactor."""

import json
from pathlib import Path

import numpy as np
import pytest

from src.models.finite_rank_operator import FiniteRankOperator
from src.models.normed_space import NormedSpace, NormTag
from src.utils.config import Config, reset_config


@pytest.fixture(autouse=True)
def clean_config(monkeypatch):
    """Isole chaque test des variables d'environnement et du cache de config."""
    for key in (
        "BAPFACTOR_MAX_ENUM_DIM",
        "BAPFACTOR_AUERBACH_MAX_CYCLES",
        "BAPFACTOR_JACOBI_MAX_SWEEPS",
        "BAPFACTOR_TEST_VECTORS",
        "BAPFACTOR_Y_SAMPLES",
        "BAPFACTOR_MONOTONICITY_SAMPLES",
        "BAPFACTOR_MAX_WORKERS",
        "LOG_LEVEL",
        "ENVIRONMENT",
    ):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setattr("src.utils.config.load_dotenv", lambda *args, **kwargs: False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def test_config() -> Config:
    """Configuration réduite pour des tests rapides."""
    return Config(
        max_enum_dim=20,
        test_vector_count=50,
        y_sample_count=50,
        monotonicity_samples=20,
        environment="test"
    )


@pytest.fixture
def linf2() -> NormedSpace:
    return NormedSpace(2, NormTag.LINF)


@pytest.fixture
def linf3() -> NormedSpace:
    return NormedSpace(3, NormTag.LINF)


@pytest.fixture
def l1_2() -> NormedSpace:
    return NormedSpace(2, NormTag.L1)


@pytest.fixture
def l2_2() -> NormedSpace:
    return NormedSpace(2, NormTag.L2)


@pytest.fixture
def identity_linf2(linf2) -> FiniteRankOperator:
    """I₂ sur ℓ^∞², instance calculable à la main."""
    return FiniteRankOperator(np.eye(2), linf2, linf2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def identity_scenario_file(tmp_path: Path) -> Path:
    """Scénario JSON: un bloc I₂ sur ℓ^∞², K = 1."""
    path = tmp_path / "identity.json"
    path.write_text(json.dumps({
        "x": {"dim": 2, "norm": "linf"},
        "w": {"dim": 2, "norm": "linf"},
        "K": 1.0,
        "blocks": [[[1.0, 0.0], [0.0, 1.0]]]
    }), encoding="utf-8")
    return path


@pytest.fixture
def violating_scenario_file(tmp_path: Path) -> Path:
    """Blocs [2I, −I]: ‖S₁‖ = 2 > K·‖T‖ = 1."""
    path = tmp_path / "violating.json"
    path.write_text(json.dumps({
        "x": {"dim": 2, "norm": "linf"},
        "w": {"dim": 2, "norm": "linf"},
        "K": 1.0,
        "blocks": [
            [[2.0, 0.0], [0.0, 2.0]],
            [[-1.0, 0.0], [0.0, -1.0]]
        ]
    }), encoding="utf-8")
    return path


@pytest.fixture
def make_operator(rng):
    """Fabrique d'opérateurs gaussiens de rang donné entre deux espaces."""
    def factory(domain: NormedSpace, codomain: NormedSpace, rank: int) -> FiniteRankOperator:
        matrix = rng.standard_normal((codomain.dim, rank)) @ rng.standard_normal((rank, domain.dim))
        return FiniteRankOperator(matrix, domain, codomain)
    return factory
