"""Génération reproductible et lecture/écriture des scénarios."""

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import structlog

from ..exceptions import CapacityError, ValidationError
from ..models.finite_rank_operator import FiniteRankOperator
from ..models.normed_space import NormedSpace, NormTag
from ..models.scenario import GeneratorSpec, Scenario
from ..utils.config import Config, get_config
from ..utils.seeding import make_rng
from ..utils.serialization import read_json, write_json
from .operator import enumeration_dimension, operator_norm

logger = structlog.get_logger("scenarios")


def gen_scenario(
    seed: int,
    dims: Sequence[int],
    norm_tags: Sequence[Union[str, NormTag]],
    block_count: int,
    ranks: Sequence[int],
    decay: float,
    config: Optional[Config] = None
) -> Scenario:
    """Génère Q_p = decay^p · G_p/‖G_p‖ avec G_p aléatoire de rang r_p.

    Les blocs sont ensuite divisés par ‖Σ Q_p‖, de sorte que ‖T‖ = 1; K
    est le plus grand rapport ‖S_N‖/‖T‖ (au moins 1), si bien que la plus
    grande somme partielle vaut exactement K·‖T‖.

    Args:
        seed: Graine PCG64
        dims: (dim X, dim W)
        norm_tags: (norme de X, norme de W)
        block_count: Nombre de blocs
        ranks: Rang de chaque bloc
        decay: Décroissance géométrique dans (0, 1)
        config: Configuration (plafond d'énumération)

    Returns:
        Scenario reproductible à partir de la graine

    Raises:
        ValidationError: Paramètres incohérents (rang > min dim, etc.)
        CapacityError: Dimensions au-delà du plafond d'énumération
    """
    config = config or get_config()
    if len(dims) != 2 or len(norm_tags) != 2:
        raise ValidationError.dimension_mismatch("dims/tags", (len(dims), len(norm_tags)), (2, 2))
    spec = GeneratorSpec(int(seed), int(block_count), tuple(ranks), float(decay))
    X = NormedSpace(int(dims[0]), NormTag.parse(norm_tags[0]))
    W = NormedSpace(int(dims[1]), NormTag.parse(norm_tags[1]))
    return materialize(spec, X, W, config)


def materialize(spec: GeneratorSpec, X: NormedSpace, W: NormedSpace,
                config: Optional[Config] = None) -> Scenario:
    """Construit les blocs d'une spécification de génération."""
    config = config or get_config()
    limit = min(X.dim, W.dim)
    if any(r > limit for r in spec.ranks):
        raise ValidationError.value_out_of_range("ranks", list(spec.ranks), min_value=1, max_value=limit)
    dimension = enumeration_dimension(X, W)
    if dimension > config.max_enum_dim:
        raise CapacityError.enumeration_too_large("sign_vertices", dimension, config.max_enum_dim)

    rng = make_rng(spec.seed)
    blocks = []
    for p, rank in enumerate(spec.ranks, start=1):
        G = rng.standard_normal((W.dim, rank)) @ rng.standard_normal((rank, X.dim))
        size = operator_norm(FiniteRankOperator(G, X, W), config.max_enum_dim)
        blocks.append(spec.decay ** p * G / size)

    total = FiniteRankOperator(np.sum(blocks, axis=0), X, W)
    norm_T = operator_norm(total, config.max_enum_dim)
    if norm_T == 0.0:
        raise ValidationError("Somme des blocs générés nulle", field_name="blocks",
                              error_code="DEGENERATE_SCENARIO")
    blocks = [block / norm_T for block in blocks]

    running = np.zeros((W.dim, X.dim))
    K = 1.0
    for block in blocks:
        running = running + block
        K = max(K, operator_norm(FiniteRankOperator(running, X, W), config.max_enum_dim))

    logger.info("scenario_generated", seed=spec.seed, blocks=spec.block_count, x=str(X), w=str(W), K=K)
    return Scenario(X, W, K, tuple(blocks), spec)


def load_scenario(path: Union[str, Path], config: Optional[Config] = None) -> Scenario:
    """Lit un scénario JSON; un scénario réduit à son générateur est matérialisé.

    Raises:
        ConfigurationError: Fichier introuvable
        ValidationError: Contenu invalide
    """
    data = read_json(path)
    if not isinstance(data, dict):
        raise ValidationError.invalid_format(str(path), type(data).__name__, "objet JSON")
    generator = GeneratorSpec.from_dict(data["generator"]) if "generator" in data else None
    if "blocks" not in data and generator is not None:
        for key in ("x", "w"):
            if key not in data:
                raise ValidationError.required_field_missing(key)
        generated = materialize(generator, NormedSpace.from_dict(data["x"]),
                                NormedSpace.from_dict(data["w"]), config)
        if "K" not in data:
            return generated
        try:
            K = float(data["K"])
        except (TypeError, ValueError):
            raise ValidationError.invalid_format("K", data["K"], "réel ≥ 1")
        return Scenario(generated.x_space, generated.w_space, K, generated.blocks, generator)
    return Scenario.from_dict(data, generator)


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    """Écrit le scénario (JSON trié, flottants en représentation courte exacte)."""
    write_json(path, scenario.to_dict())
