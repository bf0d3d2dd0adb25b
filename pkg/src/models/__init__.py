"""Modèles de données pour BAPFactor."""

from .normed_space import NormTag, NormedSpace, Vec, Functional, SubspaceBasis
from .finite_rank_operator import FiniteRankOperator, RangeBasis
from .auerbach_system import AuerbachSystem
from .splitting_plan import RankOneAtom, BlockRecord, SplittingPlan
from .y_element import YElement
from .certificate import BapCertificate
from .reports import (
    AuerbachReport,
    FiniteSetReport,
    CurvePoint,
    BoundViolation,
    PartialSumReport,
    FactorizationReport,
    MonotonicityReport,
    InequalitySampleReport,
    CrossCheckReport,
    StageResult
)
from .scenario import GeneratorSpec, Scenario

__all__ = [
    "NormTag",
    "NormedSpace",
    "Vec",
    "Functional",
    "SubspaceBasis",
    "FiniteRankOperator",
    "RangeBasis",
    "AuerbachSystem",
    "RankOneAtom",
    "BlockRecord",
    "SplittingPlan",
    "YElement",
    "BapCertificate",
    "AuerbachReport",
    "FiniteSetReport",
    "CurvePoint",
    "BoundViolation",
    "PartialSumReport",
    "FactorizationReport",
    "MonotonicityReport",
    "InequalitySampleReport",
    "CrossCheckReport",
    "StageResult",
    "GeneratorSpec",
    "Scenario"
]
