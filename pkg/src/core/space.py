"""Normes, normes duales et oracle de support sur les espaces ℓ^p."""

from typing import NamedTuple, Optional, Union

import numpy as np
import structlog

from ..exceptions import ValidationError
from ..models.normed_space import Functional, NormedSpace, NormTag, SubspaceBasis, Vec
from ..services.support_oracle import SupportSolution, get_oracle

logger = structlog.get_logger("space")

VectorLike = Union[Vec, np.ndarray]


class SupportPoint(NamedTuple):
    """Maximiseur v (norme induite ≤ 1) et valeur f(v)."""
    vector: Vec
    value: float
    degenerate: bool


def _coords(space: NormedSpace, element: Union[Vec, Functional, np.ndarray], field: str) -> np.ndarray:
    if isinstance(element, (Vec, Functional)):
        if element.space.dim != space.dim:
            raise ValidationError.dimension_mismatch(field, element.space.dim, space.dim)
        if element.space != space:
            raise ValidationError.space_mismatch(field, element.space, space)
        return element.coords
    coords = np.asarray(element, dtype=float).reshape(-1)
    if coords.shape != (space.dim,):
        raise ValidationError.dimension_mismatch(field, coords.shape[0], space.dim)
    return coords


def norm(space: NormedSpace, v: VectorLike) -> float:
    """Norme ℓ¹ / ℓ² / ℓ^∞ d'un vecteur.

    Examples:
        >>> norm(NormedSpace(3, NormTag.LINF), np.array([1.0, -2.0, 1.0]))
        2.0
    """
    return float(np.linalg.norm(_coords(space, v, "vec"), ord=space.norm_tag.ord))


def dual_norm(space: NormedSpace, f: Union[Functional, np.ndarray]) -> float:
    """Norme d'une fonctionnelle: ℓ^∞ pour ℓ¹, ℓ¹ pour ℓ^∞, ℓ² auto-duale."""
    return float(np.linalg.norm(_coords(space, f, "functional"), ord=space.norm_tag.dual.ord))


def support_maximize(
    space: NormedSpace,
    f: Union[Functional, np.ndarray],
    sub: Optional[SubspaceBasis] = None
) -> SupportPoint:
    """Maximise f(v) sur la boule unité, éventuellement restreinte à span(sub).

    Args:
        space: Espace ambiant
        f: Fonctionnelle ambiante
        sub: Sous-espace optionnel (norme induite)

    Returns:
        SupportPoint; pour f nulle sur le domaine, vecteur nul, valeur 0,
        drapeau degenerate levé

    Raises:
        ValidationError: Dimensions ou espaces incompatibles
    """
    coords = _coords(space, f, "functional")
    if sub is None:
        solution = get_oracle(space.norm_tag).maximize_full(coords)
    else:
        if sub.space != space:
            raise ValidationError.space_mismatch("support_maximize", sub.space, space)
        solution = maximize_on_section(space, sub, sub.columns.T @ coords)
    return SupportPoint(Vec(solution.vector, space), solution.value, solution.degenerate)


def maximize_on_section(space: NormedSpace, sub: SubspaceBasis, gradient: np.ndarray) -> SupportSolution:
    """Maximise une fonctionnelle donnée en coordonnées de sub sur la section.

    Le gradient g agit sur les coordonnées t (v = B t); la valeur est la
    norme duale induite de la fonctionnelle restreinte au sous-espace.
    """
    gradient = np.asarray(gradient, dtype=float).reshape(-1)
    if gradient.shape != (sub.dim,):
        raise ValidationError.dimension_mismatch("gradient", gradient.shape[0], sub.dim)
    return get_oracle(space.norm_tag).maximize_on_section(sub.columns, gradient)


def section_extreme_points(space: NormedSpace, sub: SubspaceBasis) -> np.ndarray:
    """Candidats sommets (coordonnées t, colonnes) de la section polyédrale.

    Raises:
        ValidationError: Pour la norme ℓ², dont la boule n'est pas un polytope
        CapacityError: Si l'énumération dépasse le plafond configuré
    """
    if space.norm_tag is NormTag.L2:
        raise ValidationError.invalid_enum_value("norm_tag", space.norm_tag.value, ["l1", "linf"])
    return get_oracle(space.norm_tag).section_extreme_points(sub.columns)


def unit_vector(space: NormedSpace, v: VectorLike) -> Vec:
    """Normalise un vecteur non nul dans la norme de l'espace."""
    coords = _coords(space, v, "vec")
    size = norm(space, coords)
    if size == 0.0:
        raise ValidationError.value_out_of_range("norm", size, min_value="> 0")
    return Vec(coords / size, space)
