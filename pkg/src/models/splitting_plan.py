"""Plan de découpage: blocs A_p, systèmes d'Auerbach et atomes de rang un."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .auerbach_system import AuerbachSystem
from .finite_rank_operator import FiniteRankOperator
from .normed_space import NormedSpace, SubspaceBasis


@dataclass(frozen=True, eq=False)
class RankOneAtom:
    """Atome de rang ≤ 1 stocké comme paire (fonctionnelle, vecteur).

    L'atome agit par x ↦ functional(x) · vector. La droite ỹ_s qu'il
    engendre est stockée normalisée; elle vaut None pour un atome nul.

    Attributes:
        functional: Coefficients de la fonctionnelle sur X
        vector: Vecteur image dans W
        block: Indice p du bloc (1-based)
        position: Indice i dans le bloc (1-based)
        line: Vecteur unitaire ỹ_s de W, ou None
    """
    functional: np.ndarray
    vector: np.ndarray
    block: int
    position: int
    line: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        for name in ("functional", "vector", "line"):
            value = getattr(self, name)
            if value is not None:
                array = np.array(value, dtype=float)
                array.setflags(write=False)
                object.__setattr__(self, name, array)

    @property
    def is_zero(self) -> bool:
        return self.line is None

    def matrix(self) -> np.ndarray:
        """Vue matricielle dense (W.dim × X.dim), calculée à la demande."""
        return np.outer(self.vector, self.functional)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return float(self.functional @ x) * self.vector

    def as_operator(self, domain: NormedSpace, codomain: NormedSpace) -> FiniteRankOperator:
        return FiniteRankOperator(self.matrix(), domain, codomain)

    def scaled(self, factor: float) -> "RankOneAtom":
        """Copie de l'atome multipliée par ``factor`` (même droite)."""
        return RankOneAtom(
            self.functional * factor, self.vector, self.block, self.position, self.line
        )


@dataclass(frozen=True, eq=False)
class BlockRecord:
    """Données d'un bloc A_p du découpage.

    Attributes:
        index: p (1-based)
        operator: A_p : X → W
        subspace: Base de E_p = A_p(X), None pour un bloc nul
        m: dim E_p
        auerbach: Système d'Auerbach de E_p, None pour un bloc nul
        projections: Opérateurs B_j (W → W) du système
        c_ops: Les m² opérateurs C_i = (1/m) B_j, dans l'ordre i = r·m + j
    """
    index: int
    operator: FiniteRankOperator
    subspace: Optional[SubspaceBasis]
    m: int
    auerbach: Optional[AuerbachSystem]
    projections: Tuple[FiniteRankOperator, ...] = field(default_factory=tuple)
    c_ops: Tuple[FiniteRankOperator, ...] = field(default_factory=tuple)

    @property
    def is_zero(self) -> bool:
        return self.m == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "m": self.m,
            "operator": self.operator.matrix.tolist(),
            "auerbach": self.auerbach.to_dict() if self.auerbach else None
        }


@dataclass(frozen=True, eq=False)
class SplittingPlan:
    """Construction matérialisée: suite ordonnée des atomes Ã_s.

    Attributes:
        x_space: Espace de départ X
        w_space: Espace d'arrivée W
        blocks: Blocs A_p avec leurs métadonnées
        atoms: Atomes Ã_s, s = 1..len(atoms)
        index: index[s-1] = (p, i)
        m_list: (m_1, m_2, ...)
        K: Constante des sommes partielles
        norm_T: ‖T‖ (norme de la somme des blocs)
        total: T = Σ_p A_p
    """
    x_space: NormedSpace
    w_space: NormedSpace
    blocks: Tuple[BlockRecord, ...]
    atoms: Tuple[RankOneAtom, ...]
    index: Tuple[Tuple[int, int], ...]
    m_list: Tuple[int, ...]
    K: float
    norm_T: float
    total: FiniteRankOperator

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def summary(self) -> Dict[str, Any]:
        return {
            "x": self.x_space.to_dict(),
            "w": self.w_space.to_dict(),
            "blocks": len(self.blocks),
            "m_list": list(self.m_list),
            "atoms": self.atom_count,
            "K": self.K,
            "norm_T": self.norm_T
        }
