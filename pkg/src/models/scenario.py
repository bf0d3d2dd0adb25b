"""Scénarios: espaces X, W, constante K et blocs Q_p (explicites ou générés)."""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..exceptions import ValidationError
from ..utils.serialization import matrix_from_rows
from .finite_rank_operator import FiniteRankOperator
from .normed_space import NormedSpace


@dataclass(frozen=True)
class GeneratorSpec:
    """Paramètres de génération reproductible des blocs.

    Attributes:
        seed: Graine PCG64
        block_count: Nombre de blocs
        ranks: Rang de chaque bloc
        decay: Facteur de décroissance géométrique, dans (0, 1)
    """
    seed: int
    block_count: int
    ranks: Tuple[int, ...]
    decay: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if self.seed < 0:
            raise ValidationError.value_out_of_range("seed", self.seed, min_value=0)
        if self.block_count < 1:
            raise ValidationError.value_out_of_range("block_count", self.block_count, min_value=1)
        if len(self.ranks) != self.block_count:
            raise ValidationError.dimension_mismatch("ranks", len(self.ranks), self.block_count)
        if any(r < 1 for r in self.ranks):
            raise ValidationError.value_out_of_range("ranks", list(self.ranks), min_value=1)
        if not 0.0 < self.decay < 1.0:
            raise ValidationError(
                f"decay doit être dans l'intervalle ouvert (0, 1): {self.decay}",
                field_name="decay",
                field_value=self.decay,
                error_code="VALUE_OUT_OF_RANGE"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "block_count": self.block_count,
            "ranks": list(self.ranks),
            "decay": self.decay
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GeneratorSpec":
        for key in ("seed", "block_count", "ranks", "decay"):
            if key not in data:
                raise ValidationError.required_field_missing(f"generator.{key}")
        try:
            return cls(
                seed=int(data["seed"]),
                block_count=int(data["block_count"]),
                ranks=tuple(data["ranks"]),
                decay=float(data["decay"])
            )
        except (TypeError, ValueError):
            raise ValidationError.invalid_format("generator", data, "seed, block_count, ranks, decay numériques")


@dataclass(frozen=True, eq=False)
class Scenario:
    """Instance de factorisation: T = Σ_p Q_p : X → W avec la constante K.

    Attributes:
        x_space: Espace de départ X
        w_space: Espace d'arrivée W
        K: Constante des sommes partielles (≥ 1)
        blocks: Matrices Q_p (W.dim × X.dim), ordre ligne
        generator: Paramètres de génération, si le scénario est généré
    """
    x_space: NormedSpace
    w_space: NormedSpace
    K: float
    blocks: Tuple[np.ndarray, ...]
    generator: Optional[GeneratorSpec] = None

    def __post_init__(self) -> None:
        if not np.isfinite(self.K) or self.K < 1.0:
            raise ValidationError.value_out_of_range("K", self.K, min_value=1)
        if not self.blocks:
            raise ValidationError.required_field_missing("blocks")
        expected = (self.w_space.dim, self.x_space.dim)
        frozen = []
        for p, block in enumerate(self.blocks, start=1):
            matrix = np.array(block, dtype=float)
            if matrix.shape != expected:
                raise ValidationError.dimension_mismatch(f"blocks[{p}]", matrix.shape, expected)
            matrix.setflags(write=False)
            frozen.append(matrix)
        object.__setattr__(self, "blocks", tuple(frozen))

    @property
    def seed(self) -> Optional[int]:
        return self.generator.seed if self.generator else None

    def operators(self) -> Tuple[FiniteRankOperator, ...]:
        """Blocs Q_p comme opérateurs X → W."""
        return tuple(FiniteRankOperator(b, self.x_space, self.w_space) for b in self.blocks)

    def summary(self) -> Dict[str, Any]:
        return {
            "x": self.x_space.to_dict(),
            "w": self.w_space.to_dict(),
            "K": self.K,
            "block_count": len(self.blocks),
            "generated": self.generator is not None
        }

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "x": self.x_space.to_dict(),
            "w": self.w_space.to_dict(),
            "K": self.K,
            "blocks": [b.tolist() for b in self.blocks]
        }
        if self.generator is not None:
            data["generator"] = self.generator.to_dict()
            data["seed"] = self.generator.seed
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any], generator: Optional[GeneratorSpec] = None) -> "Scenario":
        """Reconstruit un scénario aux blocs explicites.

        Args:
            data: Contenu du fichier scénario
            generator: Spécification de génération déjà décodée, le cas échéant

        Raises:
            ValidationError: Champ manquant, format ou dimension invalide
        """
        if not isinstance(data, dict):
            raise ValidationError.invalid_format("scenario", type(data).__name__, "objet JSON")
        for key in ("x", "w", "K", "blocks"):
            if key not in data:
                raise ValidationError.required_field_missing(key)
        x_space = NormedSpace.from_dict(data["x"])
        w_space = NormedSpace.from_dict(data["w"])
        if not isinstance(data["blocks"], list):
            raise ValidationError.invalid_format("blocks", data["blocks"], "liste de matrices")
        blocks = tuple(
            matrix_from_rows(rows, field_name=f"blocks[{p}]")
            for p, rows in enumerate(data["blocks"], start=1)
        )
        try:
            K = float(data["K"])
        except (TypeError, ValueError):
            raise ValidationError.invalid_format("K", data["K"], "réel ≥ 1")
        return cls(x_space, w_space, K, blocks, generator)
