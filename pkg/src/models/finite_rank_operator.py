"""Opérateurs de rang fini représentés par des matrices denses."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..exceptions import ValidationError
from ..utils.linalg import pivoted_columns
from ..utils.tolerances import TAU_RANK
from .normed_space import NormedSpace, SubspaceBasis


@dataclass(frozen=True, eq=False)
class FiniteRankOperator:
    """Opérateur linéaire entre deux espaces normés de dimension finie.

    La matrice est de forme (codomain.dim × domain.dim). Les données de
    rang (pivots de colonnes) sont calculées à la demande puis mises en
    cache de façon immuable.

    Attributes:
        matrix: Matrice dense finie
        domain: Espace de départ
        codomain: Espace d'arrivée

    Examples:
        >>> X = NormedSpace(2, NormTag.L2)
        >>> op = FiniteRankOperator(np.eye(2), X, X)
        >>> op.rank
        2
    """
    matrix: np.ndarray
    domain: NormedSpace
    codomain: NormedSpace

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        expected = (self.codomain.dim, self.domain.dim)
        if matrix.shape != expected:
            raise ValidationError.dimension_mismatch("operator", matrix.shape, expected)
        if not np.all(np.isfinite(matrix)):
            raise ValidationError.invalid_format("operator", "non fini", "entrées finies")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @cached_property
    def range_pivots(self) -> Tuple[int, ...]:
        """Colonnes pivots de l'image (tolérance τ_rank)."""
        return tuple(pivoted_columns(self.matrix, TAU_RANK))

    @property
    def rank(self) -> int:
        """Rang numérique."""
        return len(self.range_pivots)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def to_dict(self) -> Dict[str, Any]:
        return {
            "domain": self.domain.to_dict(),
            "codomain": self.codomain.to_dict(),
            "matrix": self.matrix.tolist()
        }

    def __repr__(self) -> str:
        return f"FiniteRankOperator({self.domain} -> {self.codomain}, rank={self.rank})"


@dataclass(frozen=True)
class RangeBasis:
    """Base de l'image d'un opérateur, avec drapeau pour l'opérateur nul.

    Attributes:
        basis: Base de E = A(X), ou None si l'opérateur est nul
        pivots: Indices des colonnes retenues (ordre de sélection)
    """
    basis: Optional[SubspaceBasis]
    pivots: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def is_zero(self) -> bool:
        """Vrai si l'image est réduite à {0} (bloc nul, m_p = 0)."""
        return self.basis is None
