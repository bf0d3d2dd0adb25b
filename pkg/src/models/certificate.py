"""Certificat de propriété d'approximation bornée sur un ensemble test fini."""

from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from .finite_rank_operator import FiniteRankOperator
from .normed_space import Vec


@dataclass(frozen=True, eq=False)
class BapCertificate:
    """Certificat C-BAP: approximants bornés convergeant sur l'ensemble test.

    Attributes:
        C: Constante (≥ 1)
        norm_T: ‖T‖
        approximants: R_1, ..., R_N
        test_set: Vecteurs test de X
        epsilon_schedule: Valeurs d'ε certifiées
        witness_indices: Pour chaque ε, premier N (1-based) à partir duquel
            l'erreur sur l'ensemble test reste ≤ ε
        approximant_norms: ‖R_N‖ pour chaque N
        residuals: max_x ‖R_N x − T x‖ pour chaque N
    """
    C: float
    norm_T: float
    approximants: Tuple[FiniteRankOperator, ...]
    test_set: Tuple[Vec, ...]
    epsilon_schedule: Tuple[float, ...] = field(default_factory=tuple)
    witness_indices: Tuple[int, ...] = field(default_factory=tuple)
    approximant_norms: Tuple[float, ...] = field(default_factory=tuple)
    residuals: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def length(self) -> int:
        return len(self.approximants)

    @property
    def bound(self) -> float:
        """C·‖T‖."""
        return self.C * self.norm_T

    def to_dict(self) -> Dict[str, Any]:
        return {
            "C": self.C,
            "norm_T": self.norm_T,
            "length": self.length,
            "test_set_size": len(self.test_set),
            "approximant_norms": list(self.approximant_norms),
            "residuals": list(self.residuals),
            "witnesses": [
                {"eps": eps, "N": n}
                for eps, n in zip(self.epsilon_schedule, self.witness_indices)
            ]
        }
