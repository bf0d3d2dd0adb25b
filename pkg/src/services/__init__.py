"""Services numériques pour BAPFactor."""

from .simplex_solver import DenseSimplexSolver, LPSolution
from .jacobi_svd import JacobiSingularValues
from .support_oracle import SupportOracle, SupportSolution, get_oracle
from .euclidean_oracle import EuclideanSupportOracle
from .polyhedral_oracle import PolyhedralSupportOracle

__all__ = [
    "DenseSimplexSolver",
    "LPSolution",
    "JacobiSingularValues",
    "SupportOracle",
    "SupportSolution",
    "get_oracle",
    "EuclideanSupportOracle",
    "PolyhedralSupportOracle"
]
