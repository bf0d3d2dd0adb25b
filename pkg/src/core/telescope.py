"""Télescopage d'approximants et certification BAP sur ensembles finis."""

from enum import Enum
from typing import Callable, List, Optional, Sequence

import numpy as np
import structlog

from ..exceptions import CertificationError, ProtocolError, ValidationError
from ..models.certificate import BapCertificate
from ..models.finite_rank_operator import FiniteRankOperator
from ..models.normed_space import Vec
from ..models.reports import FiniteSetReport
from ..utils.tolerances import PROPERTY_SLACK, RECONSTRUCTION, TOL_NORM
from .operator import add, apply, operator_norm, subtract
from .space import norm

logger = structlog.get_logger("telescope")

# oracle BAP: (ensemble fini, ε) ↦ opérateur de rang fini
BapOracle = Callable[[Sequence[Vec], float], FiniteRankOperator]


class NetVariant(Enum):
    """Rayon de ε-réseau: famille finie (‖T‖ = 1) ou limite ponctuelle."""
    FINITE_FAMILY = "finite_family"
    POINTWISE_LIMIT = "pointwise_limit"


def telescope(S_list: Sequence[FiniteRankOperator]) -> List[FiniteRankOperator]:
    """Q₁ = S₁, Q_l = S_l − S_{l−1}.

    Raises:
        ValidationError: Liste vide ou espaces incompatibles
    """
    if not S_list:
        raise ValidationError.required_field_missing("S_list")
    return [S_list[0]] + [subtract(S_list[l], S_list[l - 1]) for l in range(1, len(S_list))]


def partial_sums(Q_list: Sequence[FiniteRankOperator]) -> List[FiniteRankOperator]:
    """S_N = Q₁ + ⋯ + Q_N, inverse de ``telescope``."""
    if not Q_list:
        raise ValidationError.required_field_missing("Q_list")
    sums = [Q_list[0]]
    for Q in Q_list[1:]:
        sums.append(add(sums[-1], Q))
    return sums


def net_tolerance(eps: float, C: float, norm_T: float, variant: NetVariant) -> float:
    """Rayon ε₀ du réseau fini garantissant l'erreur ε.

    FINITE_FAMILY: ε₀ = ε/(2+C), sous la normalisation ‖T‖ = 1.
    POINTWISE_LIMIT: ε₀ = ε/(‖T‖ + 1 + C‖T‖).

    Raises:
        ValidationError: Paramètres hors domaine, ou ‖T‖ ≠ 1 avec FINITE_FAMILY

    Examples:
        >>> net_tolerance(1.0, 1.0, 1.0, NetVariant.FINITE_FAMILY)
        0.3333333333333333
        >>> net_tolerance(3.0, 2.0, 1.0, NetVariant.POINTWISE_LIMIT)
        0.75
    """
    _check_constants(eps, C, norm_T)
    if variant is NetVariant.FINITE_FAMILY:
        if abs(norm_T - 1.0) > PROPERTY_SLACK:
            raise ValidationError(
                f"La variante famille finie suppose ‖T‖ = 1 (reçu {norm_T})",
                field_name="norm_T",
                field_value=norm_T,
                error_code="NORMALIZATION_REQUIRED"
            )
        return eps / (2.0 + C)
    return eps / (norm_T + 1.0 + C * norm_T)


def continuity_radius(eps: float, C: float, norm_T: float) -> float:
    """δ tel que Cδ + ‖T‖δ < ε pour ε > 0 (δ = ε / (2(C + ‖T‖)))."""
    _check_constants(eps, C, norm_T)
    return eps / (2.0 * (C + norm_T))


def certify_finite_set(
    T: FiniteRankOperator,
    R: FiniteRankOperator,
    test_set: Sequence[Vec],
    eps: float,
    C: float
) -> FiniteSetReport:
    """Vérifie ‖R‖ ≤ C‖T‖ et sup_k ‖R x_k − T x_k‖ ≤ ε.

    Les échecs sont rapportés, pas levés.
    """
    _require_compatible(T, R)
    norm_T = operator_norm(T)
    bound = C * norm_T
    errors = [norm(T.codomain, apply(R, x).coords - apply(T, x).coords) for x in test_set]
    return FiniteSetReport(
        operator_norm=operator_norm(R),
        bound=bound,
        sup_error=max(errors, default=0.0),
        eps=eps,
        test_set_size=len(test_set),
        norm_slack=TOL_NORM * bound + PROPERTY_SLACK
    )


def bap_from_pointwise(
    T: FiniteRankOperator,
    R_list: Sequence[FiniteRankOperator],
    test_set: Sequence[Vec],
    C: float,
    eps_list: Sequence[float] = (0.0,)
) -> BapCertificate:
    """Émet un certificat C-BAP à partir d'approximants ponctuels.

    « Finalement ≤ ε » signifie: à partir d'un indice et jusqu'à la fin de
    la liste finie. Les résidus sous 10⁻⁹·‖T‖·max‖x‖ sont traités comme
    nuls (reconstruction exacte en précision finie).

    Args:
        T: Opérateur approché
        R_list: Approximants R_1, ..., R_N
        test_set: Ensemble test fini de X
        C: Constante (≥ 1)
        eps_list: Valeurs d'ε à certifier

    Returns:
        BapCertificate avec, pour chaque ε, le premier N témoin (1-based)

    Raises:
        ValidationError: Liste vide ou espaces incompatibles
        CertificationError: ‖R_N‖ > C‖T‖ (premier N fautif) ou ε non atteint
    """
    if not R_list:
        raise ValidationError.required_field_missing("R_list")
    _check_constants(0.0, C, 0.0)
    for R in R_list:
        _require_compatible(T, R)
    for x in test_set:
        if x.space != T.domain:
            raise ValidationError.space_mismatch("test_set", x.space, T.domain)

    norm_T = operator_norm(T)
    bound = C * norm_T
    limit = bound * (1.0 + TOL_NORM) + PROPERTY_SLACK
    norms: List[float] = []
    for N, R in enumerate(R_list, start=1):
        value = operator_norm(R)
        if value > limit:
            logger.warning("approximant_norm_bound_violated", index=N, norm=value, bound=bound)
            raise CertificationError.norm_bound_violated(N, value, bound)
        norms.append(value)

    residuals = [_sup_error(T, R, test_set) for R in R_list]
    scale = max((norm(T.domain, x) for x in test_set), default=0.0)
    slack = RECONSTRUCTION * norm_T * scale + PROPERTY_SLACK

    witnesses: List[int] = []
    for eps in eps_list:
        if eps < 0:
            raise ValidationError.value_out_of_range("eps", eps, min_value=0)
        witness = _first_stable_index(residuals, eps + slack)
        if witness is None:
            raise CertificationError.epsilon_not_reached(eps, residuals[-1])
        witnesses.append(witness)

    logger.info(
        "bap_certificate_issued",
        length=len(R_list),
        C=C,
        norm_T=norm_T,
        witnesses=witnesses
    )
    return BapCertificate(
        C=C,
        norm_T=norm_T,
        approximants=tuple(R_list),
        test_set=tuple(test_set),
        epsilon_schedule=tuple(float(e) for e in eps_list),
        witness_indices=tuple(witnesses),
        approximant_norms=tuple(norms),
        residuals=tuple(residuals)
    )


def query_schedule(depth: int, norm_T: float = 1.0) -> List[float]:
    """ε_N = ‖T‖/2^(N+1), N = 1..depth (‖T‖ = 0 traité comme 1)."""
    scale = norm_T if norm_T > 0 else 1.0
    return [scale / 2.0 ** (N + 1) for N in range(1, depth + 1)]


def pointwise_from_bap(
    oracle: BapOracle,
    T: FiniteRankOperator,
    dense_seq: Sequence[Vec],
    depth: int,
    C: float
) -> List[FiniteRankOperator]:
    """Construit R_1..R_depth en interrogeant l'oracle sur les préfixes.

    La requête N porte sur (x_1, ..., x_N) avec ε_N = ‖T‖/2^(N+1); chaque
    réponse est contrôlée: ‖R_N‖ ≤ C‖T‖ et sup_{n≤N} ‖R_N x_n − T x_n‖ ≤ ε_N.

    Raises:
        ValidationError: Profondeur ou suite invalide
        ProtocolError: Réponse de l'oracle hors contrat
    """
    if depth < 1:
        raise ValidationError.value_out_of_range("depth", depth, min_value=1)
    if not dense_seq:
        raise ValidationError.required_field_missing("dense_seq")

    norm_T = operator_norm(T)
    limit = C * norm_T * (1.0 + TOL_NORM) + PROPERTY_SLACK
    approximants: List[FiniteRankOperator] = []
    for N, eps in enumerate(query_schedule(depth, norm_T), start=1):
        prefix = list(dense_seq[:N])
        R = oracle(prefix, eps)
        if R.domain != T.domain or R.codomain != T.codomain:
            raise ProtocolError(
                f"Réponse {N}: espaces {R.domain}→{R.codomain} au lieu de {T.domain}→{T.codomain}",
                index=N
            )
        value = operator_norm(R)
        if value > limit:
            raise ProtocolError(
                f"Réponse {N}: ‖R‖ = {value:.17g} > C·‖T‖ = {C * norm_T:.17g}",
                index=N,
                context={"norm": value, "bound": C * norm_T}
            )
        error = _sup_error(T, R, prefix)
        if error > eps + PROPERTY_SLACK:
            raise ProtocolError(
                f"Réponse {N}: erreur {error:.17g} > ε = {eps:.17g}",
                index=N,
                context={"error": error, "eps": eps}
            )
        approximants.append(R)
    logger.debug("pointwise_sequence_built", depth=depth)
    return approximants


class BlockTruncationOracle:
    """Oracle BAP par troncature d'une décomposition finie T = Σ_l Q_l.

    Répond à (F, ε) par la plus courte somme partielle dont l'erreur sur F
    est ≤ ε; à défaut, par la somme complète.

    Examples:
        >>> oracle = BlockTruncationOracle(blocks)
        >>> R = oracle([x1, x2], 0.25)
    """

    def __init__(self, blocks: Sequence[FiniteRankOperator], target: Optional[FiniteRankOperator] = None):
        if not blocks:
            raise ValidationError.required_field_missing("blocks")
        self.sums = partial_sums(blocks)
        self.target = target if target is not None else self.sums[-1]
        self.calls = 0

    def __call__(self, finite_set: Sequence[Vec], eps: float) -> FiniteRankOperator:
        self.calls += 1
        for S in self.sums:
            if _sup_error(self.target, S, finite_set) <= eps:
                return S
        return self.sums[-1]


def _sup_error(T: FiniteRankOperator, R: FiniteRankOperator, test_set: Sequence[Vec]) -> float:
    if not test_set:
        return 0.0
    X = np.column_stack([x.coords for x in test_set])
    diff = (R.matrix - T.matrix) @ X
    return float(np.max(np.linalg.norm(diff, ord=T.codomain.norm_tag.ord, axis=0)))


def _first_stable_index(residuals: Sequence[float], threshold: float) -> Optional[int]:
    witness = None
    for N in range(len(residuals), 0, -1):
        if residuals[N - 1] > threshold:
            break
        witness = N
    return witness


def _check_constants(eps: float, C: float, norm_T: float) -> None:
    if eps < 0:
        raise ValidationError.value_out_of_range("eps", eps, min_value=0)
    if C < 1:
        raise ValidationError.value_out_of_range("C", C, min_value=1)
    if norm_T < 0:
        raise ValidationError.value_out_of_range("norm_T", norm_T, min_value=0)


def _require_compatible(T: FiniteRankOperator, R: FiniteRankOperator) -> None:
    if R.domain != T.domain or R.codomain != T.codomain:
        raise ValidationError.space_mismatch(
            "approximant", f"{R.domain}->{R.codomain}", f"{T.domain}->{T.codomain}"
        )
