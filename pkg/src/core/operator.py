"""Algèbre des opérateurs de rang fini et normes d'opérateurs induites exactes."""

from functools import reduce
from typing import Iterator, Optional, Sequence

import numpy as np
import structlog

from ..exceptions import CapacityError, ValidationError
from ..models.finite_rank_operator import FiniteRankOperator, RangeBasis
from ..models.normed_space import Functional, NormedSpace, NormTag, SubspaceBasis, Vec
from ..services.jacobi_svd import JacobiSingularValues
from ..utils.config import get_config
from .space import section_extreme_points

logger = structlog.get_logger("operator")

# taille des paquets de motifs de signes énumérés simultanément
SIGN_CHUNK = 1 << 14


def apply(op: FiniteRankOperator, x: Vec) -> Vec:
    """Produit matrice-vecteur, résultat dans op.codomain.

    Raises:
        ValidationError: Si x n'appartient pas au domaine
    """
    _require_space("apply", op.domain, x.space)
    return Vec(op.matrix @ x.coords, op.codomain)


def add(left: FiniteRankOperator, right: FiniteRankOperator) -> FiniteRankOperator:
    _require_pair("add", left, right)
    return FiniteRankOperator(left.matrix + right.matrix, left.domain, left.codomain)


def subtract(left: FiniteRankOperator, right: FiniteRankOperator) -> FiniteRankOperator:
    _require_pair("subtract", left, right)
    return FiniteRankOperator(left.matrix - right.matrix, left.domain, left.codomain)


def scale(op: FiniteRankOperator, factor: float) -> FiniteRankOperator:
    return FiniteRankOperator(float(factor) * op.matrix, op.domain, op.codomain)


def compose(outer: FiniteRankOperator, inner: FiniteRankOperator) -> FiniteRankOperator:
    """outer ∘ inner (inner appliqué en premier)."""
    _require_space("compose", outer.domain, inner.codomain)
    return FiniteRankOperator(outer.matrix @ inner.matrix, inner.domain, outer.codomain)


def sum_operators(ops: Sequence[FiniteRankOperator]) -> FiniteRankOperator:
    """Somme d'une liste non vide d'opérateurs compatibles."""
    if not ops:
        raise ValidationError.required_field_missing("operators")
    return reduce(add, ops)


def zero_operator(domain: NormedSpace, codomain: NormedSpace) -> FiniteRankOperator:
    return FiniteRankOperator(np.zeros((codomain.dim, domain.dim)), domain, codomain)


def identity(space: NormedSpace) -> FiniteRankOperator:
    return FiniteRankOperator(np.eye(space.dim), space, space)


def rank_one(f: Functional, w: Vec) -> FiniteRankOperator:
    """Opérateur x ↦ f(x)·w de f.space vers w.space."""
    return FiniteRankOperator(np.outer(w.coords, f.coords), f.space, w.space)


def range_basis(op: FiniteRankOperator) -> RangeBasis:
    """Base de l'image par colonnes pivots (résidu maximal d'abord).

    Un opérateur nul donne une base vide, signalée par ``is_zero``.

    Examples:
        >>> X = NormedSpace(2, NormTag.L2)
        >>> range_basis(FiniteRankOperator([[1, 2], [2, 4]], X, X)).rank
        1
    """
    pivots = op.range_pivots
    if not pivots:
        return RangeBasis(None, ())
    return RangeBasis(SubspaceBasis(op.matrix[:, list(pivots)], op.codomain), pivots)


def enumeration_dimension(domain: NormedSpace, codomain: NormedSpace) -> int:
    """Dimension des motifs de signes énumérés par ``operator_norm`` (0: forme close)."""
    d_tag, c_tag = domain.norm_tag, codomain.norm_tag
    if d_tag is NormTag.L1 or c_tag is NormTag.LINF:
        return 0
    if d_tag is NormTag.L2 and c_tag is NormTag.L2:
        return 0
    if d_tag is NormTag.LINF and c_tag is NormTag.L1:
        return min(domain.dim, codomain.dim)
    if d_tag is NormTag.LINF:
        return domain.dim
    return codomain.dim


def operator_norm(op: FiniteRankOperator, max_enum_dim: Optional[int] = None) -> float:
    """Norme induite exacte pour les neuf couples de normes.

    - domaine ℓ¹: max des normes des colonnes;
    - arrivée ℓ^∞: max des normes duales des lignes;
    - ℓ² → ℓ²: plus grande valeur singulière (Jacobi);
    - domaine ℓ^∞: max sur les sommets ±1 du cube (ℓ^∞ → ℓ¹ énumère le
      plus petit côté, par symétrie de la forme bilinéaire);
    - ℓ² → ℓ¹: max de ‖Mᵀσ‖₂ sur les motifs de signes σ.

    Args:
        op: Opérateur
        max_enum_dim: Plafond d'énumération (défaut: configuration)

    Returns:
        ‖op‖

    Raises:
        CapacityError: Si la dimension d'énumération dépasse le plafond

    Examples:
        >>> S = NormedSpace(2, NormTag.LINF)
        >>> operator_norm(FiniteRankOperator([[1, 1], [1, -1]], S, S))
        2.0
    """
    M = op.matrix
    d_tag, c_tag = op.domain.norm_tag, op.codomain.norm_tag
    if not np.any(M):
        return 0.0

    if d_tag is NormTag.L1:
        return float(np.max(np.linalg.norm(M, ord=c_tag.ord, axis=0)))
    if c_tag is NormTag.LINF:
        return float(np.max(np.linalg.norm(M, ord=d_tag.dual.ord, axis=1)))
    if d_tag is NormTag.L2 and c_tag is NormTag.L2:
        config = get_config()
        return JacobiSingularValues(config.jacobi_max_sweeps).spectral_norm(M)

    dimension = enumeration_dimension(op.domain, op.codomain)
    cap = get_config().max_enum_dim if max_enum_dim is None else max_enum_dim
    if dimension > cap:
        raise CapacityError.enumeration_too_large("sign_vertices", dimension, cap)

    if d_tag is NormTag.LINF and c_tag is NormTag.L1:
        oriented = M if M.shape[1] <= M.shape[0] else M.T
        return _max_over_signs(oriented, NormTag.L1)
    if d_tag is NormTag.LINF:
        return _max_over_signs(M, c_tag)
    # ℓ² → ℓ¹: ‖M‖ = max_σ ‖Mᵀσ‖₂
    return _max_over_signs(M.T, NormTag.L2)


def _sign_patterns(dim: int) -> Iterator[np.ndarray]:
    # premier signe fixé à +1: ‖M(−σ)‖ = ‖Mσ‖
    free = dim - 1
    total = 1 << free
    shifts = np.arange(free, dtype=np.int64)
    for start in range(0, total, SIGN_CHUNK):
        codes = np.arange(start, min(start + SIGN_CHUNK, total), dtype=np.int64)
        bits = (codes[:, None] >> shifts) & 1
        signs = np.ones((codes.size, dim))
        signs[:, 1:] = 1.0 - 2.0 * bits
        yield signs.T


def _max_over_signs(M: np.ndarray, tag: NormTag) -> float:
    best = 0.0
    for signs in _sign_patterns(M.shape[1]):
        images = M @ signs
        best = max(best, float(np.max(np.linalg.norm(images, ord=tag.ord, axis=0))))
    return best


def restricted_operator_norm(
    op: FiniteRankOperator,
    sub: SubspaceBasis,
    extreme_points: Optional[np.ndarray] = None
) -> float:
    """sup ‖op e‖ sur la boule unité de span(sub) (norme induite du domaine).

    Pour un domaine ℓ², on se ramène à un repère orthonormé de E; pour un
    domaine polyédral, la fonction convexe e ↦ ‖op e‖ atteint son maximum
    en un sommet de la section, d'où un maximum exact sur les candidats.

    Args:
        op: Opérateur dont le domaine contient E
        sub: Base de E
        extreme_points: Candidats sommets précalculés (coordonnées t)
    """
    _require_space("restricted_operator_norm", op.domain, sub.space)
    if op.domain.norm_tag is NormTag.L2:
        Q, _ = np.linalg.qr(sub.columns)
        frame = NormedSpace(sub.dim, NormTag.L2)
        return operator_norm(FiniteRankOperator(op.matrix @ Q, frame, op.codomain))

    if extreme_points is None:
        extreme_points = section_extreme_points(op.domain, sub)
    if extreme_points.shape[1] == 0:
        return 0.0
    images = op.matrix @ (sub.columns @ extreme_points)
    return float(np.max(np.linalg.norm(images, ord=op.codomain.norm_tag.ord, axis=0)))


def grid_operator_norm(op: FiniteRankOperator, step: float = 1e-2) -> float:
    """Borne inférieure de ‖op‖ par grille dense sur la sphère unité (dim ≤ 3).

    Les points de grille parcourent le bord du cube [−1, 1]^d (chaque
    direction le rencontre une fois) et sont renormalisés dans la norme
    du domaine.

    Raises:
        ValidationError: Si la dimension du domaine dépasse 3
    """
    d = op.domain.dim
    if d > 3:
        raise ValidationError.value_out_of_range("domain.dim", d, max_value=3)
    ticks = np.linspace(-1.0, 1.0, int(round(2.0 / step)) + 1)
    best = 0.0
    for axis in range(d):
        for sign in (1.0, -1.0):
            others = np.meshgrid(*([ticks] * (d - 1)), indexing="ij")
            count = others[0].size if others else 1
            points = np.empty((d, count))
            points[axis] = sign
            rows = [r for r in range(d) if r != axis]
            for row, grid in zip(rows, others):
                points[row] = grid.reshape(-1)
            sizes = np.linalg.norm(points, ord=op.domain.norm_tag.ord, axis=0)
            images = np.linalg.norm(op.matrix @ points, ord=op.codomain.norm_tag.ord, axis=0)
            best = max(best, float(np.max(images / sizes)))
    return best


def _require_space(operation: str, expected: NormedSpace, actual: NormedSpace) -> None:
    if expected.dim != actual.dim:
        raise ValidationError.dimension_mismatch(operation, actual.dim, expected.dim)
    if expected != actual:
        raise ValidationError.space_mismatch(operation, expected, actual)


def _require_pair(operation: str, left: FiniteRankOperator, right: FiniteRankOperator) -> None:
    _require_space(operation, left.domain, right.domain)
    _require_space(operation, left.codomain, right.codomain)
