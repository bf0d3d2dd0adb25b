"""Aides d'algèbre linéaire partagées (rang numérique déterministe)."""

from typing import List

import numpy as np

from .tolerances import TAU_RANK


def pivoted_columns(matrix: np.ndarray, rel_tol: float = TAU_RANK) -> List[int]:
    """Sélectionne une base de colonnes par Gram-Schmidt à pivot.

    À chaque étape, la colonne de plus grand résidu est retenue (égalités
    départagées par le plus petit indice); l'arrêt se fait quand le plus
    grand résidu passe sous ``rel_tol`` fois la plus grande norme de colonne.

    Args:
        matrix: Matrice dense (lignes = ambiant, colonnes = générateurs)
        rel_tol: Tolérance relative de rang

    Returns:
        Indices des colonnes pivots, dans l'ordre de sélection
    """
    residual = np.array(matrix, dtype=float, copy=True)
    if residual.size == 0:
        return []
    scale = float(np.max(np.linalg.norm(residual, axis=0)))
    if scale == 0.0:
        return []
    threshold = rel_tol * scale

    pivots: List[int] = []
    for _ in range(min(residual.shape)):
        norms = np.linalg.norm(residual, axis=0)
        norms[pivots] = -1.0
        j = int(np.argmax(norms))
        if norms[j] <= threshold:
            break
        pivots.append(j)
        q = residual[:, j] / norms[j]
        residual -= np.outer(q, q @ residual)
    return pivots


def numerical_rank(matrix: np.ndarray, rel_tol: float = TAU_RANK) -> int:
    """Rang numérique cohérent avec ``pivoted_columns``."""
    return len(pivoted_columns(matrix, rel_tol))
