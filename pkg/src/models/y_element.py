"""Éléments à support fini de l'espace de suites Y."""

from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Dict, Mapping

from ..exceptions import ValidationError
from .splitting_plan import SplittingPlan


@dataclass(frozen=True, eq=False)
class YElement:
    """Suite (y(s))_s à support fini avec y(s) = c_s · ỹ_s.

    Les droites ỹ_s sont fixées par le plan. Aucun coefficient n'est
    stocké pour un indice d'atome nul; les coefficients nuls sont omis.

    Attributes:
        coeffs: Correspondance s ↦ c_s (s 1-based)
        plan: Plan de découpage qui porte les droites ỹ_s
    """
    coeffs: Mapping[int, float]
    plan: SplittingPlan

    def __post_init__(self) -> None:
        cleaned: Dict[int, float] = {}
        for s, c in self.coeffs.items():
            s = int(s)
            if not 1 <= s <= self.plan.atom_count:
                raise ValidationError.value_out_of_range(
                    "s", s, min_value=1, max_value=self.plan.atom_count
                )
            if self.plan.atoms[s - 1].is_zero:
                raise ValidationError(
                    f"Aucune droite de base pour l'atome nul s={s}",
                    field_name="s",
                    field_value=s,
                    error_code="ZERO_ATOM_COEFFICIENT"
                )
            if c != 0.0:
                cleaned[s] = float(c)
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(cleaned.items()))))

    @property
    def support(self) -> tuple:
        return tuple(self.coeffs.keys())

    def truncate(self, n: int) -> "YElement":
        """Projection de base P_n: coefficients d'indice ≤ n."""
        return YElement({s: c for s, c in self.coeffs.items() if s <= n}, self.plan)

    def to_dict(self) -> Dict[str, Any]:
        return {"coeffs": {str(s): c for s, c in self.coeffs.items()}}
