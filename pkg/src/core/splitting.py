"""Découpage des blocs A_p en atomes de rang un et bornes de sommes partielles."""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..exceptions import ValidationError
from ..models.auerbach_system import AuerbachSystem
from ..models.finite_rank_operator import FiniteRankOperator
from ..models.normed_space import NormTag
from ..models.reports import BoundViolation, CurvePoint, PartialSumReport
from ..models.splitting_plan import BlockRecord, RankOneAtom, SplittingPlan
from ..utils.config import Config, get_config
from ..utils.tolerances import BOUND_SLACK, PROPERTY_SLACK, TOL_NORM
from .auerbach import auerbach_projections, auerbach_system
from .operator import (
    add,
    compose,
    operator_norm,
    range_basis,
    restricted_operator_norm,
    scale,
    sum_operators,
    zero_operator,
)
from .space import norm, section_extreme_points, support_maximize

logger = structlog.get_logger("splitting")

WITHIN_BLOCK_BOUND = 2.0
GLOBAL_FACTOR = 5.0
BLOCK_FACTOR = 2.0


def split_block(A_p: FiniteRankOperator, system: Optional[AuerbachSystem]) -> List[FiniteRankOperator]:
    """Les m² opérateurs C_i ∘ A_p, C_i = (1/m) B_j pour i = r·m + j.

    r parcourt 0..m−1 (boucle externe), j parcourt 1..m (boucle interne).
    Un bloc nul (pas de système) donne une liste vide.

    Examples:
        >>> ops = split_block(A, system)   # m = 2
        >>> len(ops)
        4
    """
    if system is None:
        return []
    m = system.dim
    projections = auerbach_projections(system)
    return [scale(compose(projections[j], A_p), 1.0 / m) for _ in range(m) for j in range(m)]


def index_map(m_list: Sequence[int], p: int, i: int) -> int:
    """s = m₀² + m₁² + ⋯ + m_{p−1}² + i, avec m₀ = 0 (indices 1-based).

    Raises:
        ValidationError: p hors de 1..len(m_list) ou i hors de 1..m_p²

    Examples:
        >>> index_map([2, 3], 2, 1)
        5
    """
    if not 1 <= p <= len(m_list):
        raise ValidationError.value_out_of_range("p", p, min_value=1, max_value=len(m_list))
    size = m_list[p - 1] ** 2
    if not 1 <= i <= size:
        raise ValidationError.value_out_of_range("i", i, min_value=1, max_value=size)
    return sum(m * m for m in m_list[:p - 1]) + i


def index_inverse(m_list: Sequence[int], s: int) -> Tuple[int, int]:
    """Inverse de ``index_map``: s ↦ (p, i)."""
    offset = 0
    for p, m in enumerate(m_list, start=1):
        if s <= offset + m * m and s > offset:
            return p, s - offset
        offset += m * m
    raise ValidationError.value_out_of_range("s", s, min_value=1, max_value=offset)


def block_boundaries(m_list: Sequence[int]) -> Tuple[int, ...]:
    """Indice s du dernier atome de chaque préfixe de blocs (0 si tous nuls).

    Examples:
        >>> block_boundaries([2, 0, 1])
        (4, 4, 5)
    """
    boundaries: List[int] = []
    last = 0
    for p, m in enumerate(m_list, start=1):
        if m > 0:
            last = index_map(m_list, p, m * m)
        boundaries.append(last)
    return tuple(boundaries)


def build_splitting(
    Q_list: Sequence[FiniteRankOperator],
    K: float,
    config: Optional[Config] = None
) -> SplittingPlan:
    """Construit le plan complet: image, Auerbach et découpage de chaque bloc.

    Les blocs sont traités indépendamment (pool de threads), puis aplatis
    dans l'ordre des p.

    Args:
        Q_list: Blocs A_p = Q_p : X → W
        K: Constante des sommes partielles (≥ 1)
        config: Configuration (nombre de threads, plafonds)

    Returns:
        SplittingPlan

    Raises:
        ValidationError: Liste vide, K < 1, espaces incompatibles, ou somme
            partielle de norme > K·‖T‖ (longueur du préfixe fautif)
    """
    config = config or get_config()
    if not Q_list:
        raise ValidationError.required_field_missing("Q_list")
    if K < 1:
        raise ValidationError.value_out_of_range("K", K, min_value=1)

    total = sum_operators(Q_list)
    norm_T = operator_norm(total)
    bound = K * norm_T
    running = None
    for N, Q in enumerate(Q_list, start=1):
        running = Q if running is None else add(running, Q)
        value = operator_norm(running)
        if value > bound * (1.0 + TOL_NORM) + PROPERTY_SLACK:
            logger.warning("partial_sum_bound_violated", prefix_length=N, norm=value, bound=bound)
            raise ValidationError.partial_sum_bound_violated(N, value, bound)

    with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
        processed = list(pool.map(
            lambda item: _process_block(item[0], item[1], config),
            enumerate(Q_list, start=1)
        ))

    blocks = tuple(record for record, _ in processed)
    m_list = tuple(record.m for record in blocks)
    atoms: List[Optional[RankOneAtom]] = [None] * sum(m * m for m in m_list)
    for record, block_atoms in processed:
        for atom in block_atoms:
            atoms[index_map(m_list, record.index, atom.position) - 1] = atom

    plan = SplittingPlan(
        x_space=total.domain,
        w_space=total.codomain,
        blocks=blocks,
        atoms=tuple(atoms),
        index=tuple(index_inverse(m_list, s) for s in range(1, len(atoms) + 1)),
        m_list=m_list,
        K=float(K),
        norm_T=norm_T,
        total=total
    )
    logger.info(
        "splitting_built",
        blocks=len(blocks),
        atoms=plan.atom_count,
        m_list=list(plan.m_list),
        norm_T=norm_T,
        K=K
    )
    return plan


def _process_block(p: int, A_p: FiniteRankOperator, config: Config) -> Tuple[BlockRecord, List[RankOneAtom]]:
    basis = range_basis(A_p)
    if basis.is_zero:
        logger.debug("zero_block_skipped", block=p)
        return BlockRecord(p, A_p, None, 0, None), []

    system = auerbach_system(basis.basis, config)
    m = system.dim
    projections = tuple(auerbach_projections(system))
    c_ops = tuple(scale(projections[j], 1.0 / m) for _ in range(m) for j in range(m))
    record = BlockRecord(p, A_p, basis.basis, m, system, projections, c_ops)

    atoms: List[RankOneAtom] = []
    for i, op in enumerate(split_block(A_p, system), start=1):
        # op = e_j ⊗ (A_pᵀ e_j* / m): la fonctionnelle se relit le long de e_j
        vector = system.points[(i - 1) % m].coords
        functional = op.matrix.T @ vector / float(vector @ vector)
        atoms.append(RankOneAtom(
            functional=functional,
            vector=vector,
            block=p,
            position=i,
            line=_atom_line(A_p, functional, vector)
        ))
    return record, atoms


def _atom_line(A_p: FiniteRankOperator, functional: np.ndarray, vector: np.ndarray) -> Optional[np.ndarray]:
    # ỹ_s = Ã_s x* / ‖Ã_s x*‖ avec x* maximiseur de la fonctionnelle sur la boule de X
    witness = support_maximize(A_p.domain, functional)
    if witness.degenerate:
        return None
    image = float(functional @ witness.vector.coords) * vector
    size = norm(A_p.codomain, image)
    if size == 0.0:
        return None
    return image / size


def verify_partial_sums(plan: SplittingPlan) -> PartialSumReport:
    """Courbes de normes de sommes partielles et bornes associées.

    - dans chaque bloc: ‖Σ_{i≤q} C_i‖ (sur E_p) ≤ 2;
    - globalement: ‖Σ_{s≤n} Ã_s‖ ≤ 5K·‖T‖;
    - par bloc: ‖A_k‖ ≤ 2K·‖T‖.

    Les violations sont rapportées (tolérance additive 10⁻⁷), jamais levées.
    """
    violations: List[BoundViolation] = []
    within: List[Tuple[CurvePoint, ...]] = []
    for record in plan.blocks:
        if record.is_zero:
            continue
        curve = _within_block_curve(record)
        for pt in curve:
            if pt.norm > pt.bound + BOUND_SLACK:
                violations.append(BoundViolation("within_block", record.index, pt.norm, pt.bound, pt.n))
        within.append(curve)

    global_curve = tuple(
        CurvePoint(n, value, GLOBAL_FACTOR * plan.K * plan.norm_T)
        for n, value in enumerate(global_curve_norms(plan), start=1)
    )
    for pt in global_curve:
        if pt.norm > pt.bound + BOUND_SLACK:
            violations.append(BoundViolation("global", pt.n, pt.norm, pt.bound))

    block_norms = tuple(
        CurvePoint(record.index, operator_norm(record.operator), BLOCK_FACTOR * plan.K * plan.norm_T)
        for record in plan.blocks
    )
    for pt in block_norms:
        if pt.norm > pt.bound + BOUND_SLACK:
            violations.append(BoundViolation("block_norm", pt.n, pt.norm, pt.bound))

    report = PartialSumReport(
        within_block=tuple(within),
        global_curve=global_curve,
        block_norms=block_norms,
        violations=tuple(violations),
        K=plan.K,
        norm_T=plan.norm_T
    )
    logger.info(
        "partial_sums_verified",
        within_block_max=report.within_block_max,
        global_max=report.global_max,
        max_ratio_to_K=report.max_ratio_to_K,
        violations=len(violations)
    )
    return report


def global_curve_norms(plan: SplittingPlan) -> List[float]:
    """‖Σ_{s≤n} Ã_s‖ pour n = 1..atom_count."""
    running = zero_operator(plan.x_space, plan.w_space)
    values: List[float] = []
    for atom in plan.atoms:
        running = add(running, atom.as_operator(plan.x_space, plan.w_space))
        values.append(operator_norm(running))
    return values


def _within_block_curve(record: BlockRecord) -> Tuple[CurvePoint, ...]:
    sub = record.subspace
    points = None
    if sub.space.norm_tag is not NormTag.L2:
        points = section_extreme_points(sub.space, sub)
    running = None
    curve: List[CurvePoint] = []
    for q, C_i in enumerate(record.c_ops, start=1):
        running = C_i if running is None else add(running, C_i)
        value = restricted_operator_norm(running, sub, points)
        curve.append(CurvePoint(q, value, WITHIN_BLOCK_BOUND))
    return tuple(curve)
