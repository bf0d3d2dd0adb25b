"""Systèmes d'Auerbach par montée de déterminant coordonnée par coordonnée."""

from typing import List, Optional, Tuple

import numpy as np
import structlog

from ..exceptions import ConvergenceError
from ..models.auerbach_system import AuerbachSystem
from ..models.finite_rank_operator import FiniteRankOperator
from ..models.normed_space import NormTag, SubspaceBasis
from ..models.reports import AuerbachReport
from ..utils.config import Config, get_config
from ..utils.tolerances import AUERBACH_RELATIVE_IMPROVEMENT, PROPERTY_SLACK, TOL_AUERBACH
from .operator import rank_one
from .space import maximize_on_section, norm

logger = structlog.get_logger("auerbach")

# remplacement d'un point seulement sur amélioration stricte du déterminant
STRICT_IMPROVEMENT = 1e-12


def auerbach_system(sub: SubspaceBasis, config: Optional[Config] = None) -> AuerbachSystem:
    """Calcule un système d'Auerbach du sous-espace E = span(sub).

    Les points e_j sont repérés par une matrice P de coordonnées (e_j =
    B P[:, j]). À chaque pas, e_j est remplacé par le maximiseur de sa
    fonctionnelle cofacteur (ligne j de P⁻¹) sur la boule unité de E,
    si cela augmente strictement |det P|. Au point stationnaire, chaque
    e_j* est de norme duale 1.

    Args:
        sub: Base de E (rang m ≥ 1)
        config: Configuration (plafond de cycles)

    Returns:
        AuerbachSystem certifié à tol_auer près

    Raises:
        ConvergenceError: Si la stationnarité n'est pas atteinte, y compris
            après le redémarrage Gram-Schmidt

    Examples:
        >>> space = NormedSpace(2, NormTag.LINF)
        >>> system = auerbach_system(SubspaceBasis(np.eye(2), space))
        >>> system.det_value
        1.0
    """
    config = config or get_config()
    if sub.space.norm_tag is NormTag.L2:
        return _orthonormal_system(sub)

    start = _normalized_start(sub)
    system, residuals = _ascend(sub, start, config.auerbach_max_cycles, restarted=False)
    if max(residuals.values()) <= TOL_AUERBACH:
        return system

    logger.warning("auerbach_restart", dim=sub.dim, residuals=residuals)
    system, residuals = _ascend(sub, _gram_schmidt_start(sub), config.auerbach_max_cycles,
                                restarted=True)
    if max(residuals.values()) <= TOL_AUERBACH:
        return system
    raise ConvergenceError.auerbach_stalled(system.cycles, system.coordinates.tolist(), residuals)


def auerbach_projections(system: AuerbachSystem) -> List[FiniteRankOperator]:
    """Opérateurs B_j = e_j* ⊗ e_j (W → W), de somme l'identité sur E."""
    return [rank_one(f, e) for f, e in zip(system.cofunctionals, system.points)]


def verify_auerbach(system: AuerbachSystem, tol: float = TOL_AUERBACH) -> AuerbachReport:
    """Recalcule les trois résidus d'invariants d'un système.

    Args:
        system: Système à auditer (éventuellement altéré)
        tol: Tolérance pass/fail

    Returns:
        AuerbachReport (aucune exception pour un invariant violé)
    """
    sub = system.subspace
    space = sub.space
    unit = tuple(abs(norm(space, e) - 1.0) for e in system.points)
    pairing = np.array([[f(e) for e in system.points] for f in system.cofunctionals])
    biorthogonality = float(np.max(np.abs(pairing - np.eye(system.dim))))
    dual = tuple(
        abs(maximize_on_section(space, sub, sub.columns.T @ f.coords).value - 1.0)
        for f in system.cofunctionals
    )
    return AuerbachReport(unit, biorthogonality, dual, tol)


def _orthonormal_system(sub: SubspaceBasis) -> AuerbachSystem:
    # en ℓ², toute base orthonormée est un système d'Auerbach
    Q, R = np.linalg.qr(sub.columns)
    P = np.linalg.inv(R)
    system = _assemble(sub, P, cycles=0, history=(), restarted=False)
    logger.debug("auerbach_orthonormal", dim=sub.dim)
    return system


def _normalized_start(sub: SubspaceBasis) -> np.ndarray:
    scales = np.array([norm(sub.space, v) for v in sub.vectors()])
    return np.diag(1.0 / scales)


def _gram_schmidt_start(sub: SubspaceBasis) -> np.ndarray:
    _, R = np.linalg.qr(sub.columns)
    P = np.linalg.inv(R)
    scales = np.linalg.norm(sub.columns @ P, ord=sub.space.norm_tag.ord, axis=0)
    P = P / scales
    if np.linalg.det(P) < 0:
        P[:, 0] = -P[:, 0]
    return P


def _ascend(
    sub: SubspaceBasis,
    start: np.ndarray,
    max_cycles: int,
    restarted: bool
) -> Tuple[AuerbachSystem, dict]:
    space = sub.space
    P = np.array(start, dtype=float)
    det = abs(float(np.linalg.det(P)))
    history: List[float] = []

    for cycle in range(1, max_cycles + 1):
        det_start = det
        for j in range(sub.dim):
            cofactor = np.linalg.inv(P)[j]
            solution = maximize_on_section(space, sub, cofactor)
            if solution.value > 1.0 + STRICT_IMPROVEMENT:
                P[:, j] = solution.coordinates
                det = abs(float(np.linalg.det(P)))
        if det < det_start * (1.0 - PROPERTY_SLACK):
            raise ConvergenceError(
                f"|det| décroissant au cycle {cycle}: {det_start:.17g} → {det:.17g}",
                iterations=cycle,
                last_iterate=P.tolist(),
                error_code="AUERBACH_DET_DECREASED"
            )
        history.append(det)
        if det - det_start <= AUERBACH_RELATIVE_IMPROVEMENT * det_start:
            system = _assemble(sub, P, cycle, tuple(history), restarted)
            report = verify_auerbach(system)
            residuals = {
                "unit_norm": max(report.unit_norm_residuals),
                "biorthogonality": report.biorthogonality_residual,
                "dual_norm": max(report.dual_norm_residuals)
            }
            logger.debug("auerbach_converged", dim=sub.dim, cycles=cycle, det=det,
                         restarted=restarted)
            return system, residuals

    system = _assemble(sub, P, max_cycles, tuple(history), restarted)
    report = verify_auerbach(system)
    raise ConvergenceError.auerbach_stalled(
        max_cycles,
        P.tolist(),
        {
            "unit_norm": max(report.unit_norm_residuals),
            "biorthogonality": report.biorthogonality_residual,
            "dual_norm": max(report.dual_norm_residuals)
        }
    )


def _assemble(
    sub: SubspaceBasis,
    P: np.ndarray,
    cycles: int,
    history: Tuple[float, ...],
    restarted: bool
) -> AuerbachSystem:
    space = sub.space
    P_inv = np.linalg.inv(P)
    # fonctionnelles nulles sur le complément orthogonal de E
    ambient = P_inv @ np.linalg.pinv(sub.columns)
    points = tuple(space.vector(sub.columns @ P[:, j]) for j in range(sub.dim))
    cofunctionals = tuple(space.functional(ambient[j]) for j in range(sub.dim))
    coordinates = P.copy()
    coordinates.setflags(write=False)
    return AuerbachSystem(
        subspace=sub,
        points=points,
        cofunctionals=cofunctionals,
        det_value=abs(float(np.linalg.det(P))),
        coordinates=coordinates,
        cycles=cycles,
        det_history=history,
        restarted=restarted
    )
