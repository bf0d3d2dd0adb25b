"""Rapports de vérification: chaque inégalité vérifiée apparaît avec sa marge.

Les opérations de vérification ne lèvent pas d'exception pour une
inégalité violée: elles retournent ces enregistrements, avec un statut
pass/fail par élément.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class AuerbachReport:
    """Résidus des trois invariants d'un système d'Auerbach.

    Attributes:
        unit_norm_residuals: |‖e_j‖ − 1| pour chaque j
        biorthogonality_residual: max_ij |e_i*(e_j) − δ_ij|
        dual_norm_residuals: |‖e_j*‖_{E*} − 1| pour chaque j
        tol: Tolérance appliquée
    """
    unit_norm_residuals: Tuple[float, ...]
    biorthogonality_residual: float
    dual_norm_residuals: Tuple[float, ...]
    tol: float

    @property
    def unit_norm_passed(self) -> Tuple[bool, ...]:
        return tuple(r <= self.tol for r in self.unit_norm_residuals)

    @property
    def dual_norm_passed(self) -> Tuple[bool, ...]:
        return tuple(r <= self.tol for r in self.dual_norm_residuals)

    @property
    def biorthogonality_passed(self) -> bool:
        return self.biorthogonality_residual <= self.tol

    @property
    def passed(self) -> bool:
        return (
            all(self.unit_norm_passed)
            and self.biorthogonality_passed
            and all(self.dual_norm_passed)
        )

    @property
    def max_residual(self) -> float:
        return max(
            [self.biorthogonality_residual, *self.unit_norm_residuals, *self.dual_norm_residuals]
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tol": self.tol,
            "unit_norm": [
                {"j": j + 1, "residual": r, "passed": ok}
                for j, (r, ok) in enumerate(zip(self.unit_norm_residuals, self.unit_norm_passed))
            ],
            "biorthogonality": {
                "residual": self.biorthogonality_residual,
                "passed": self.biorthogonality_passed
            },
            "dual_norm": [
                {"j": j + 1, "residual": r, "passed": ok}
                for j, (r, ok) in enumerate(zip(self.dual_norm_residuals, self.dual_norm_passed))
            ],
            "passed": self.passed
        }


@dataclass(frozen=True)
class FiniteSetReport:
    """Vérification de ‖R‖ ≤ C‖T‖ et sup_k ‖R x_k − T x_k‖ ≤ ε.

    Attributes:
        operator_norm: ‖R‖
        bound: C·‖T‖
        sup_error: Erreur maximale atteinte sur l'ensemble test
        eps: ε demandé
        test_set_size: Taille de l'ensemble test
    """
    operator_norm: float
    bound: float
    sup_error: float
    eps: float
    test_set_size: int
    norm_slack: float = 0.0

    @property
    def norm_passed(self) -> bool:
        return self.operator_norm <= self.bound + self.norm_slack

    @property
    def error_passed(self) -> bool:
        return self.sup_error <= self.eps

    @property
    def passed(self) -> bool:
        return self.norm_passed and self.error_passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "operator_norm": self.operator_norm,
            "bound": self.bound,
            "norm_margin": self.bound - self.operator_norm,
            "sup_error": self.sup_error,
            "eps": self.eps,
            "error_margin": self.eps - self.sup_error,
            "test_set_size": self.test_set_size,
            "passed": self.passed
        }


@dataclass(frozen=True)
class CurvePoint:
    """Un point de courbe de normes de sommes partielles."""
    n: int
    norm: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.norm

    @property
    def passed(self) -> bool:
        return self.margin >= 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "norm": self.norm, "bound": self.bound, "margin": self.margin}


@dataclass(frozen=True)
class BoundViolation:
    """Inégalité violée, localisée.

    Attributes:
        kind: within_block, global ou block_norm
        index: n global, ou p pour les contrôles par bloc
        norm: Valeur observée
        bound: Borne attendue
        position: q dans le bloc (contrôles within_block uniquement)
    """
    kind: str
    index: int
    norm: float
    bound: float
    position: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {"kind": self.kind, "index": self.index, "norm": self.norm, "bound": self.bound}
        if self.position is not None:
            data["position"] = self.position
        return data


@dataclass(frozen=True)
class PartialSumReport:
    """Bornes de sommes partielles d'un plan de découpage.

    Attributes:
        within_block: Courbes ‖Σ_{i≤q} C_i^(p)‖ sur E_p, une par bloc non nul
        global_curve: Courbe ‖Σ_{s≤n} Ã_s‖, n = 1..atom_count
        block_norms: ‖A_k‖ comparés à 2K·‖T‖, un point par bloc
        violations: Inégalités violées, dans l'ordre de découverte
        K: Constante K
        norm_T: ‖T‖
    """
    within_block: Tuple[Tuple[CurvePoint, ...], ...]
    global_curve: Tuple[CurvePoint, ...]
    block_norms: Tuple[CurvePoint, ...]
    violations: Tuple[BoundViolation, ...]
    K: float
    norm_T: float

    @property
    def within_block_max(self) -> float:
        return max((pt.norm for curve in self.within_block for pt in curve), default=0.0)

    @property
    def global_max(self) -> float:
        return max((pt.norm for pt in self.global_curve), default=0.0)

    @property
    def max_ratio_to_K(self) -> float:
        """Rapport empirique max_n ‖Σ_{s≤n} Ã_s‖ / (K·‖T‖)."""
        scale = self.K * self.norm_T
        return self.global_max / scale if scale > 0 else 0.0

    @property
    def four_k_observed(self) -> bool:
        """Vrai si la courbe reste sous 4K·‖T‖ sur cette instance (observé, non certifié)."""
        return self.global_max <= 4.0 * self.K * self.norm_T + 1e-7

    @property
    def passed(self) -> bool:
        return not self.violations

    def curve_rows(self) -> List[Dict[str, Any]]:
        """Lignes CSV de la courbe globale."""
        return [pt.to_dict() for pt in self.global_curve]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "K": self.K,
            "norm_T": self.norm_T,
            "within_block": [[pt.to_dict() for pt in curve] for curve in self.within_block],
            "within_block_max": self.within_block_max,
            "global_curve": self.curve_rows(),
            "global_max": self.global_max,
            "block_norms": [pt.to_dict() for pt in self.block_norms],
            "max_ratio_to_K": self.max_ratio_to_K,
            "four_k_observed": self.four_k_observed,
            "violations": [v.to_dict() for v in self.violations],
            "passed": self.passed
        }


@dataclass(frozen=True)
class FactorizationReport:
    """Résidus ‖j Ã x − T x‖ sur un ensemble test.

    Attributes:
        residuals: Résidu par vecteur test
        thresholds: Seuil 10⁻⁸·‖T‖·‖x‖ par vecteur test
    """
    residuals: Tuple[float, ...]
    thresholds: Tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def failures(self) -> Tuple[int, ...]:
        """Indices (0-based) des vecteurs test en échec."""
        return tuple(
            k for k, (r, t) in enumerate(zip(self.residuals, self.thresholds)) if r > t
        )

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "test_count": len(self.residuals),
            "residuals": list(self.residuals),
            "max_residual": self.max_residual,
            "failures": list(self.failures),
            "passed": self.passed
        }


@dataclass(frozen=True)
class MonotonicityReport:
    """Audit de monotonie de la base (ȳ_s).

    Attributes:
        samples: Nombre de suites de coefficients testées
        comparisons: Nombre de paires (m, m+1) comparées
        violations: Nombre de comparaisons au-delà de la tolérance
        max_violation: Plus grande baisse observée |||P_m y||| − |||P_{m+1} y|||
        tol: Tolérance appliquée
    """
    samples: int
    comparisons: int
    violations: int
    max_violation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "samples": self.samples,
            "comparisons": self.comparisons,
            "violations": self.violations,
            "max_violation": self.max_violation,
            "tol": self.tol,
            "passed": self.passed
        }


@dataclass(frozen=True)
class InequalitySampleReport:
    """Échantillon d'une inégalité lhs ≤ factor·rhs (contraction de j, ‖Ã‖).

    Attributes:
        name: Inégalité vérifiée
        samples: Taille de l'échantillon
        max_ratio: max lhs / rhs sur les échantillons de rhs > 0
        bound: Facteur autorisé (1 pour j, 5K·‖T‖ pour Ã)
        relative_slack: Tolérance relative
        violations: Indices (0-based) des échantillons en échec
    """
    name: str
    samples: int
    max_ratio: float
    bound: float
    relative_slack: float
    violations: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "samples": self.samples,
            "max_ratio": self.max_ratio,
            "bound": self.bound,
            "margin": self.bound - self.max_ratio,
            "violations": list(self.violations),
            "passed": self.passed
        }


@dataclass(frozen=True)
class CrossCheckReport:
    """Comparaison des certificats ponctuel et issu de la factorisation.

    Attributes:
        compared: Nombre d'indices N comparés
        differences: ‖S_N − R_{s_N}‖ par N (s_N = fin du bloc N)
        first_mismatch: Premier N (1-based) en désaccord, ou None
        both_bounded: Les deux certificats respectent leur borne C·‖T‖
        same_final: Opérateurs finaux égaux (à 10⁻⁹ près)
    """
    compared: int
    differences: Tuple[float, ...]
    first_mismatch: Optional[int]
    both_bounded: bool
    same_final: bool

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None and self.both_bounded and self.same_final

    def to_dict(self) -> Dict[str, Any]:
        return {
            "compared": self.compared,
            "differences": list(self.differences),
            "first_mismatch": self.first_mismatch,
            "both_bounded": self.both_bounded,
            "same_final": self.same_final,
            "passed": self.passed
        }


@dataclass
class StageResult:
    """Résultat d'une étape du pipeline.

    Attributes:
        name: Nom de l'étape
        passed: Statut de l'étape
        details: Résidus, marges et rapports détaillés
        duration_ms: Durée mesurée (exclue des comparaisons de déterminisme)
    """
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    duration_ms: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "details": self.details}
