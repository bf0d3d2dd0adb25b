"""Interface abstraite des oracles de support (maximisation sur la boule unité)."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
import structlog

from ..models.normed_space import NormTag
from ..utils.tolerances import DEGENERATE_GRADIENT


@dataclass(frozen=True)
class SupportSolution:
    """Maximiseur d'une fonctionnelle linéaire sur une boule unité.

    Attributes:
        vector: Maximiseur en coordonnées ambiantes (norme ≤ 1)
        value: Valeur maximale atteinte
        degenerate: Vrai si la fonctionnelle est nulle sur le domaine
        coordinates: Maximiseur en coordonnées du sous-espace, si applicable
    """
    vector: np.ndarray
    value: float
    degenerate: bool = False
    coordinates: Optional[np.ndarray] = None


class SupportOracle(ABC):
    """Contrat commun des oracles de support pour une norme donnée.

    Deux formes sont exposées: la maximisation sur toute la boule unité
    de l'espace ambiant, et la maximisation sur sa section par un
    sous-espace E = span(B), avec la fonctionnelle donnée en coordonnées
    de E (gradient g = Bᵀ f).

    Examples:
        >>> oracle = get_oracle(NormTag.LINF)
        >>> oracle.maximize_full(np.array([1.0, 1.0])).value
        2.0
    """

    norm_tag: NormTag

    def __init__(self, max_enum_dim: int = 20) -> None:
        self.max_enum_dim = max_enum_dim
        self.logger = structlog.get_logger(self.__class__.__name__)

    @abstractmethod
    def maximize_full(self, f: np.ndarray) -> SupportSolution:
        """Maximise f·v sur la boule unité ambiante."""

    @abstractmethod
    def maximize_on_section(self, columns: np.ndarray, gradient: np.ndarray) -> SupportSolution:
        """Maximise g·t sur {t : ‖B t‖ ≤ 1}.

        Args:
            columns: Base B du sous-espace (ambient.dim × k, rang plein)
            gradient: Fonctionnelle g en coordonnées du sous-espace (k)

        Returns:
            SupportSolution avec vector = B t et coordinates = t
        """

    def _degenerate(self, ambient_dim: int, k: Optional[int] = None) -> SupportSolution:
        coordinates = np.zeros(k) if k is not None else None
        return SupportSolution(np.zeros(ambient_dim), 0.0, True, coordinates)

    @staticmethod
    def _is_zero(gradient: np.ndarray) -> bool:
        return gradient.size == 0 or float(np.max(np.abs(gradient))) <= DEGENERATE_GRADIENT


def get_oracle(norm_tag: NormTag, max_enum_dim: Optional[int] = None) -> SupportOracle:
    """Oracle de support adapté à une norme.

    Args:
        norm_tag: Norme de l'espace ambiant
        max_enum_dim: Plafond d'énumération (défaut: configuration partagée)

    Returns:
        Instance partagée (les oracles sont sans état mutable)
    """
    if max_enum_dim is None:
        from ..utils.config import get_config
        max_enum_dim = get_config().max_enum_dim
    return _oracle_for(NormTag.parse(norm_tag), int(max_enum_dim))


@lru_cache(maxsize=None)
def _oracle_for(tag: NormTag, max_enum_dim: int) -> SupportOracle:
    from .euclidean_oracle import EuclideanSupportOracle
    from .polyhedral_oracle import PolyhedralSupportOracle

    if tag is NormTag.L2:
        return EuclideanSupportOracle(max_enum_dim)
    return PolyhedralSupportOracle(tag, max_enum_dim)
