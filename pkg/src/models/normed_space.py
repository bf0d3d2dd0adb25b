"""Espaces normés de dimension finie, vecteurs, fonctionnelles et sous-espaces."""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Sequence, Union

import numpy as np

from ..exceptions import ValidationError
from ..utils.linalg import numerical_rank
from ..utils.tolerances import TAU_RANK


class NormTag(Enum):
    """Normes supportées (support exact: sommets de LP ou forme close)."""
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @property
    def dual(self) -> "NormTag":
        """Norme duale: ℓ¹ ↔ ℓ^∞, ℓ² auto-duale."""
        return _DUAL_TAGS[self]

    @property
    def ord(self) -> Union[int, float]:
        """Paramètre ``ord`` correspondant pour ``numpy.linalg.norm``."""
        return _NUMPY_ORD[self]

    @classmethod
    def parse(cls, value: Union[str, "NormTag"]) -> "NormTag":
        """Convertit une étiquette sérialisée ("l1", "l2", "linf").

        Raises:
            ValidationError: Si l'étiquette est inconnue
        """
        if isinstance(value, NormTag):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValidationError.invalid_enum_value(
                "norm_tag", value, [tag.value for tag in cls]
            )


_DUAL_TAGS = {NormTag.L1: NormTag.LINF, NormTag.L2: NormTag.L2, NormTag.LINF: NormTag.L1}
_NUMPY_ORD = {NormTag.L1: 1, NormTag.L2: 2, NormTag.LINF: np.inf}


@dataclass(frozen=True)
class NormedSpace:
    """Espace ℓ^p de dimension finie (p ∈ {1, 2, ∞}).

    Attributes:
        dim: Dimension (≥ 1)
        norm_tag: Norme de l'espace, fixée pour toute sa durée de vie

    Examples:
        >>> space = NormedSpace(3, NormTag.LINF)
        >>> str(space)
        'linf^3'
    """
    dim: int
    norm_tag: NormTag

    def __post_init__(self) -> None:
        object.__setattr__(self, "norm_tag", NormTag.parse(self.norm_tag))
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < 1:
            raise ValidationError.value_out_of_range("dim", self.dim, min_value=1)
        object.__setattr__(self, "dim", int(self.dim))

    def __str__(self) -> str:
        return f"{self.norm_tag.value}^{self.dim}"

    def vector(self, coords: Sequence[float]) -> "Vec":
        """Construit un vecteur de cet espace."""
        return Vec(coords, self)

    def functional(self, coords: Sequence[float]) -> "Functional":
        """Construit une fonctionnelle sur cet espace."""
        return Functional(coords, self)

    def zero(self) -> "Vec":
        """Vecteur nul."""
        return Vec(np.zeros(self.dim), self)

    def basis_vector(self, index: int) -> "Vec":
        """Vecteur de base canonique e_index (0-based)."""
        coords = np.zeros(self.dim)
        coords[index] = 1.0
        return Vec(coords, self)

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "norm": self.norm_tag.value}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NormedSpace":
        """Reconstruit un espace depuis ``{"dim": ..., "norm": ...}``."""
        if "dim" not in data:
            raise ValidationError.required_field_missing("dim")
        if "norm" not in data:
            raise ValidationError.required_field_missing("norm")
        return cls(data["dim"], NormTag.parse(data["norm"]))


def _frozen_coords(coords: Any, space: NormedSpace, field_name: str) -> np.ndarray:
    array = np.array(coords, dtype=float).reshape(-1)
    if array.shape != (space.dim,):
        raise ValidationError.dimension_mismatch(field_name, array.shape[0], space.dim)
    if not np.all(np.isfinite(array)):
        raise ValidationError.invalid_format(field_name, "non fini", "coordonnées finies")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Vec:
    """Vecteur d'un espace normé (coordonnées finies, immuables).

    Attributes:
        coords: Coordonnées (longueur = space.dim)
        space: Espace d'appartenance
    """
    coords: np.ndarray
    space: NormedSpace

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", _frozen_coords(self.coords, self.space, "vec"))

    def __add__(self, other: "Vec") -> "Vec":
        _require_same_space("add", self.space, other.space)
        return Vec(self.coords + other.coords, self.space)

    def __sub__(self, other: "Vec") -> "Vec":
        _require_same_space("subtract", self.space, other.space)
        return Vec(self.coords - other.coords, self.space)

    def __mul__(self, scalar: float) -> "Vec":
        return Vec(float(scalar) * self.coords, self.space)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Vec({self.coords.tolist()}, {self.space})"


@dataclass(frozen=True, eq=False)
class Functional:
    """Fonctionnelle linéaire agissant par l'accouplement standard.

    Attributes:
        coords: Coefficients (longueur = space.dim)
        space: Espace de définition
    """
    coords: np.ndarray
    space: NormedSpace

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", _frozen_coords(self.coords, self.space, "functional"))

    def __call__(self, v: Vec) -> float:
        _require_same_space("evaluate", self.space, v.space)
        return float(self.coords @ v.coords)

    def __repr__(self) -> str:
        return f"Functional({self.coords.tolist()}, {self.space})"


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Base (colonnes linéairement indépendantes) d'un sous-espace E ⊂ W.

    La norme induite est la norme ambiante restreinte à span(colonnes).
    Une famille de rang déficient est rejetée à la construction.

    Attributes:
        columns: Matrice ambient.dim × k (une colonne par vecteur de base)
        space: Espace ambiant
    """
    columns: np.ndarray
    space: NormedSpace

    def __post_init__(self) -> None:
        columns = np.array(self.columns, dtype=float)
        if columns.ndim == 1:
            columns = columns.reshape(-1, 1)
        if columns.ndim != 2 or columns.shape[0] != self.space.dim:
            raise ValidationError.dimension_mismatch(
                "subspace_basis", columns.shape, f"({self.space.dim}, k)"
            )
        k = columns.shape[1]
        if not 1 <= k <= self.space.dim:
            raise ValidationError.value_out_of_range(
                "subspace_dim", k, min_value=1, max_value=self.space.dim
            )
        if not np.all(np.isfinite(columns)):
            raise ValidationError.invalid_format("subspace_basis", "non fini", "colonnes finies")
        rank = numerical_rank(columns, TAU_RANK)
        if rank != k:
            raise ValidationError(
                f"Base de sous-espace de rang déficient: rang {rank} < {k} colonnes",
                field_name="subspace_basis",
                field_value=rank,
                error_code="RANK_DEFICIENT_BASIS"
            )
        columns.setflags(write=False)
        object.__setattr__(self, "columns", columns)

    @property
    def dim(self) -> int:
        """Dimension k du sous-espace."""
        return int(self.columns.shape[1])

    def vectors(self) -> list:
        """Colonnes sous forme de vecteurs ambiants."""
        return [Vec(self.columns[:, j], self.space) for j in range(self.dim)]

    def embed(self, coordinates: np.ndarray) -> np.ndarray:
        """Coordonnées dans la base → coordonnées ambiantes."""
        return self.columns @ np.asarray(coordinates, dtype=float)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vec]) -> "SubspaceBasis":
        """Construit la base à partir de vecteurs d'un même espace."""
        if not vectors:
            raise ValidationError.required_field_missing("vectors")
        space = vectors[0].space
        for v in vectors:
            _require_same_space("subspace_basis", space, v.space)
        return cls(np.column_stack([v.coords for v in vectors]), space)


def _require_same_space(operation: str, left: NormedSpace, right: NormedSpace) -> None:
    if left != right:
        raise ValidationError.space_mismatch(operation, left, right)
