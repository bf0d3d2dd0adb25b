"""Système d'Auerbach d'un sous-espace E ⊂ W."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from .normed_space import Functional, SubspaceBasis, Vec


@dataclass(frozen=True, eq=False)
class AuerbachSystem:
    """Vecteurs unitaires e_j de E et fonctionnelles biorthogonales e_j*.

    Les points sont repérés par leurs coordonnées dans la base du
    sous-espace (colonnes de ``coordinates``); les fonctionnelles sont
    stockées en coordonnées ambiantes et annulent le complément
    orthogonal de E, si bien que e_j ⊗ e_j* est un opérateur W → W.

    Attributes:
        subspace: Base de E
        points: Vecteurs e_j (norme ambiante 1)
        cofunctionals: Fonctionnelles ambiantes e_j*
        det_value: |det| des points en coordonnées du sous-espace
        coordinates: Matrice k × k des coordonnées des points
        cycles: Nombre de cycles de montée par coordonnées effectués
        det_history: |det| à la fin de chaque cycle
        restarted: Vrai si le départ Gram-Schmidt a été utilisé
    """
    subspace: SubspaceBasis
    points: Tuple[Vec, ...]
    cofunctionals: Tuple[Functional, ...]
    det_value: float
    coordinates: np.ndarray
    cycles: int = 0
    det_history: Tuple[float, ...] = field(default_factory=tuple)
    restarted: bool = False

    @property
    def dim(self) -> int:
        """Dimension m du sous-espace."""
        return len(self.points)

    def to_dict(self) -> Dict[str, Any]:
        points: List[List[float]] = [p.coords.tolist() for p in self.points]
        functionals: List[List[float]] = [f.coords.tolist() for f in self.cofunctionals]
        return {
            "dim": self.dim,
            "points": points,
            "cofunctionals": functionals,
            "det_value": self.det_value,
            "cycles": self.cycles,
            "restarted": self.restarted
        }
