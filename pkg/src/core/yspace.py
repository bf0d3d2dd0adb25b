"""L'espace de suites Y, les opérateurs Ã et j, et la réciproque BAP."""

from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..exceptions import CertificationError, ValidationError
from ..models.certificate import BapCertificate
from ..models.finite_rank_operator import FiniteRankOperator
from ..models.normed_space import Vec
from ..models.reports import (
    CrossCheckReport,
    FactorizationReport,
    InequalitySampleReport,
    MonotonicityReport,
    PartialSumReport,
)
from ..models.splitting_plan import SplittingPlan
from ..models.y_element import YElement
from ..utils.seeding import make_rng
from ..utils.tolerances import (
    BOUND_SLACK,
    FACTORIZATION_RELATIVE,
    PROPERTY_SLACK,
    RECONSTRUCTION,
    TOL_NORM,
)
from .operator import operator_norm, subtract, zero_operator
from .space import norm
from .splitting import GLOBAL_FACTOR, block_boundaries, global_curve_norms
from .telescope import bap_from_pointwise

logger = structlog.get_logger("yspace")


def _terms(y: YElement) -> np.ndarray:
    """Vecteurs y(s) = c_s ỹ_s du support, en colonnes, dans l'ordre des s."""
    plan = y.plan
    if not y.coeffs:
        return np.zeros((plan.w_space.dim, 0))
    return np.column_stack([c * plan.atoms[s - 1].line for s, c in y.coeffs.items()])


def y_norm(y: YElement) -> float:
    """|||y||| = max_n ‖Σ_{s≤n} y(s)‖_W.

    Les sommes partielles ne changent qu'aux indices du support: le
    maximum est pris sur ces seuls préfixes.
    """
    terms = _terms(y)
    if terms.shape[1] == 0:
        return 0.0
    running = np.cumsum(terms, axis=1)
    return float(np.max(np.linalg.norm(running, ord=y.plan.w_space.norm_tag.ord, axis=0)))


def lift(plan: SplittingPlan, x: Vec) -> YElement:
    """Ã x = (Ã_s x)_s, exprimé par ses coefficients sur les droites ỹ_s.

    Raises:
        ValidationError: Si x n'appartient pas à X
    """
    if x.space != plan.x_space:
        raise ValidationError.space_mismatch("lift", x.space, plan.x_space)
    coeffs = {}
    for s, atom in enumerate(plan.atoms, start=1):
        if atom.is_zero:
            continue
        # Ã_s x = φ(x)·v et v est colinéaire à ỹ_s
        along = float(atom.vector @ atom.line) / float(atom.line @ atom.line)
        coeffs[s] = float(atom.functional @ x.coords) * along
    return YElement(coeffs, plan)


def sum_j(y: YElement) -> Vec:
    """j y = Σ_s c_s ỹ_s dans W."""
    terms = _terms(y)
    return Vec(terms.sum(axis=1), y.plan.w_space)


def verify_factorization(
    plan: SplittingPlan,
    T: FiniteRankOperator,
    test_set: Sequence[Vec]
) -> FactorizationReport:
    """Résidus ‖j Ã x − T x‖_W, seuil 10⁻⁸·‖T‖·‖x‖ par vecteur."""
    norm_T = operator_norm(T)
    residuals: List[float] = []
    thresholds: List[float] = []
    for x in test_set:
        image = sum_j(lift(plan, x)).coords
        residuals.append(norm(plan.w_space, image - T.matrix @ x.coords))
        thresholds.append(FACTORIZATION_RELATIVE * norm_T * norm(plan.x_space, x))
    report = FactorizationReport(tuple(residuals), tuple(thresholds))
    logger.info("factorization_verified", tests=len(residuals), max_residual=report.max_residual,
                passed=report.passed)
    return report


def prefix_norms(y: YElement) -> List[float]:
    """|||P_m y||| pour m = 1..atom_count (P_m: troncature des coefficients)."""
    return [y_norm(y.truncate(m)) for m in range(1, y.plan.atom_count + 1)]


def monotonicity_audit(y: YElement) -> Tuple[int, int, float]:
    """(comparaisons, violations, baisse maximale) de la suite des |||P_m y|||."""
    values = prefix_norms(y)
    drops = [values[m] - values[m + 1] for m in range(len(values) - 1)]
    violations = sum(1 for d in drops if d > PROPERTY_SLACK)
    return len(drops), violations, max([0.0, *drops])


def random_element(plan: SplittingPlan, rng: np.random.Generator) -> YElement:
    """Élément de Y à coefficients gaussiens sur tous les atomes non nuls."""
    support = [s for s, atom in enumerate(plan.atoms, start=1) if not atom.is_zero]
    values = rng.standard_normal(len(support))
    return YElement(dict(zip(support, values)), plan)


def basis_monotonicity_check(plan: SplittingPlan, coeff_samples: int, seed: int) -> MonotonicityReport:
    """|||Σ_{s≤m} c_s ȳ_s||| ≤ |||Σ_{s≤m+1} c_s ȳ_s||| sur des suites gaussiennes."""
    rng = make_rng(seed)
    comparisons = violations = 0
    worst = 0.0
    for _ in range(coeff_samples):
        count, bad, drop = monotonicity_audit(random_element(plan, rng))
        comparisons += count
        violations += bad
        worst = max(worst, drop)
    report = MonotonicityReport(coeff_samples, comparisons, violations, worst, PROPERTY_SLACK)
    logger.info("monotonicity_checked", samples=coeff_samples, violations=violations)
    return report


def lift_operator_norm(plan: SplittingPlan, report: Optional[PartialSumReport] = None) -> float:
    """‖Ã‖_{X→Y} = max_n ‖Σ_{s≤n} Ã_s‖ (échange des deux sup)."""
    if report is not None:
        return report.global_max
    return max(global_curve_norms(plan), default=0.0)


def sample_sum_contraction(plan: SplittingPlan, count: int, seed: int) -> InequalitySampleReport:
    """‖j y‖_W ≤ |||y||| sur des éléments aléatoires (‖j‖ ≤ 1)."""
    rng = make_rng(seed)
    ratios: List[float] = []
    violations: List[int] = []
    for k in range(count):
        y = random_element(plan, rng)
        size = y_norm(y)
        image = norm(plan.w_space, sum_j(y))
        if image > size * (1.0 + PROPERTY_SLACK):
            violations.append(k)
        if size > 0:
            ratios.append(image / size)
    return InequalitySampleReport("sum_contraction", count, max(ratios, default=0.0), 1.0,
                                  PROPERTY_SLACK, tuple(violations))


def sample_lift_boundedness(plan: SplittingPlan, vectors: Sequence[Vec]) -> InequalitySampleReport:
    """|||Ã x||| ≤ 5K·‖T‖·‖x‖ sur des vecteurs de X."""
    bound = GLOBAL_FACTOR * plan.K * plan.norm_T
    ratios: List[float] = []
    violations: List[int] = []
    for k, x in enumerate(vectors):
        size = norm(plan.x_space, x)
        lifted = y_norm(lift(plan, x))
        if lifted > bound * size * (1.0 + BOUND_SLACK) + PROPERTY_SLACK:
            violations.append(k)
        if size > 0:
            ratios.append(lifted / size)
    return InequalitySampleReport("lift_boundedness", len(vectors), max(ratios, default=0.0),
                                  bound, BOUND_SLACK, tuple(violations))


def factorization_approximants(plan: SplittingPlan) -> List[FiniteRankOperator]:
    """R_N = j ∘ P_N ∘ Ã, construit colonne par colonne sur la base de X."""
    X = plan.x_space
    if plan.atom_count == 0:
        return [zero_operator(X, plan.w_space)]
    lifted = [lift(plan, X.basis_vector(k)) for k in range(X.dim)]
    return [
        FiniteRankOperator(
            np.column_stack([sum_j(y.truncate(N)).coords for y in lifted]),
            X,
            plan.w_space
        )
        for N in range(1, plan.atom_count + 1)
    ]


def certificate_from_factorization(
    plan: SplittingPlan,
    test_set: Optional[Sequence[Vec]] = None
) -> BapCertificate:
    """Certificat 5K-BAP déduit de la factorisation T = j Ã.

    ‖P_N‖ ≤ 1 est contrôlé empiriquement (|||P_N Ã x||| ≤ |||Ã x||| sur
    l'ensemble test) avant l'émission du certificat.

    Args:
        plan: Plan de découpage
        test_set: Ensemble test (défaut: base canonique de X)

    Raises:
        CertificationError: Projection de base non contractante, borne de
            norme violée ou reconstruction finale inexacte
    """
    X = plan.x_space
    test_set = list(test_set) if test_set is not None else [X.basis_vector(k) for k in range(X.dim)]
    for k, x in enumerate(test_set):
        y = lift(plan, x)
        full = y_norm(y)
        for N in range(1, plan.atom_count + 1):
            truncated = y_norm(y.truncate(N))
            if truncated > full + PROPERTY_SLACK * max(1.0, full):
                raise CertificationError(
                    f"|||P_{N} Ãx||| = {truncated:.17g} > |||Ãx||| = {full:.17g}",
                    index=N,
                    error_code="BASIS_PROJECTION_NOT_CONTRACTIVE",
                    context={"test_index": k}
                )
    return bap_from_pointwise(
        plan.total,
        factorization_approximants(plan),
        test_set,
        GLOBAL_FACTOR * plan.K,
        eps_list=(0.0,)
    )


def cross_check_certificates(
    pointwise: BapCertificate,
    factorization: BapCertificate,
    plan: SplittingPlan
) -> CrossCheckReport:
    """Compare S_N (sommes de blocs) et R_s aux frontières de blocs s = m₁²+⋯+m_N².

    Un préfixe de blocs tous nuls (frontière s = 0) est comparé à
    l'opérateur nul.
    """
    offsets = block_boundaries(plan.m_list)
    scale = max(1.0, plan.norm_T)
    compared = min(len(pointwise.approximants), len(offsets))
    zero = zero_operator(plan.x_space, plan.w_space)
    differences: List[float] = []
    first_mismatch = None
    for N in range(1, compared + 1):
        s = offsets[N - 1]
        R = factorization.approximants[s - 1] if s > 0 else zero
        difference = operator_norm(subtract(pointwise.approximants[N - 1], R))
        differences.append(difference)
        if first_mismatch is None and difference > RECONSTRUCTION * scale:
            first_mismatch = N

    def bounded(cert: BapCertificate) -> bool:
        limit = cert.bound * (1.0 + TOL_NORM) + PROPERTY_SLACK
        return all(value <= limit for value in cert.approximant_norms)

    final = operator_norm(subtract(pointwise.approximants[-1], factorization.approximants[-1]))
    report = CrossCheckReport(
        compared=compared,
        differences=tuple(differences),
        first_mismatch=first_mismatch,
        both_bounded=bounded(pointwise) and bounded(factorization),
        same_final=final <= RECONSTRUCTION * scale
    )
    logger.info("certificates_cross_checked", compared=compared, first_mismatch=first_mismatch,
                passed=report.passed)
    return report
