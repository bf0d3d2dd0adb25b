"""Oracle de support ℓ¹ / ℓ^∞: sommets de LP et sommets de sections."""

from itertools import combinations, product
from math import comb, log2, ceil
from typing import List

import numpy as np

from ..exceptions import CapacityError, ValidationError
from ..models.normed_space import NormTag
from ..utils.tolerances import TAU_RANK, TOL_LP
from .simplex_solver import DenseSimplexSolver
from .support_oracle import SupportOracle, SupportSolution


class PolyhedralSupportOracle(SupportOracle):
    """Support des boules polyédrales (cube ℓ^∞, cross-polytope ℓ¹).

    Sur tout l'espace, le maximiseur est un sommet connu en forme close.
    Sur une section {t : ‖B t‖ ≤ 1}, il est obtenu par le simplexe dense
    (variables scindées t = t⁺ − t⁻), puis renormalisé sur la sphère.

    La section étant un polytope, toute fonction convexe y atteint son
    maximum en un sommet: ``section_extreme_points`` énumère un ensemble
    fini de candidats contenant tous les sommets, ce qui rend exactes les
    normes d'opérateurs restreintes à un sous-espace.

    Attributes:
        norm_tag: LINF ou L1
        solver: Simplexe dense partagé
    """

    def __init__(self, norm_tag: NormTag, max_enum_dim: int = 20) -> None:
        super().__init__(max_enum_dim)
        if norm_tag is NormTag.L2:
            raise ValidationError.invalid_enum_value("norm_tag", norm_tag.value, ["l1", "linf"])
        self.norm_tag = norm_tag
        self.solver = DenseSimplexSolver(tol=TOL_LP)

    def maximize_full(self, f: np.ndarray) -> SupportSolution:
        f = np.asarray(f, dtype=float)
        if self._is_zero(f):
            return self._degenerate(f.size)

        if self.norm_tag is NormTag.LINF:
            vector = np.sign(f)
            return SupportSolution(vector, float(np.abs(f).sum()))

        i = int(np.argmax(np.abs(f)))
        vector = np.zeros(f.size)
        vector[i] = np.sign(f[i])
        return SupportSolution(vector, float(abs(f[i])))

    def maximize_on_section(self, columns: np.ndarray, gradient: np.ndarray) -> SupportSolution:
        B = np.asarray(columns, dtype=float)
        g = np.asarray(gradient, dtype=float)
        n, k = B.shape
        if self._is_zero(g):
            return self._degenerate(n, k)

        if self.norm_tag is NormTag.LINF:
            A = np.block([[B, -B], [-B, B]])
            b = np.ones(2 * n)
            c = np.concatenate([g, -g])
        else:
            identity = np.eye(n)
            A = np.block([
                [B, -B, -identity],
                [-B, B, -identity],
                [np.zeros((1, 2 * k)), np.ones((1, n))]
            ])
            b = np.concatenate([np.zeros(2 * n), [1.0]])
            c = np.concatenate([g, -g, np.zeros(n)])

        solution = self.solver.maximize(c, A, b)
        t = solution.x[:k] - solution.x[k:2 * k]
        scale = float(np.linalg.norm(B @ t, ord=self.norm_tag.ord))
        if scale > 0.0:
            t = t / scale
        vector = B @ t
        self.logger.debug(
            "section_support_solved",
            norm=self.norm_tag.value,
            k=k,
            pivots=solution.iterations
        )
        return SupportSolution(vector, float(g @ t), coordinates=t)

    def section_extreme_points(self, columns: np.ndarray) -> np.ndarray:
        """Candidats (en coordonnées t) contenant tous les sommets de la section.

        Args:
            columns: Base B du sous-espace (ambient.dim × k)

        Returns:
            Matrice k × N de points de norme ambiante 1

        Raises:
            CapacityError: Si le nombre de candidats dépasse 2^max_enum_dim
        """
        B = np.asarray(columns, dtype=float)
        n, k = B.shape
        count = self._candidate_count(n, k)
        if count > 2 ** self.max_enum_dim:
            raise CapacityError.enumeration_too_large(
                "section_vertices", int(ceil(log2(count))), self.max_enum_dim
            )
        if self.norm_tag is NormTag.LINF:
            points = self._cube_section_vertices(B)
        else:
            points = self._cross_polytope_section_vertices(B)
        self.logger.debug("section_vertices_enumerated", norm=self.norm_tag.value, n=n, k=k,
                          candidates=count, vertices=points.shape[1])
        return points

    def _candidate_count(self, n: int, k: int) -> int:
        if self.norm_tag is NormTag.LINF:
            return comb(n, k) * 2 ** k
        return sum(comb(n, s) for s in range(1, n - k + 2))

    def _cube_section_vertices(self, B: np.ndarray) -> np.ndarray:
        # sommet: k contraintes |(Bt)_i| = 1 actives et indépendantes
        n, k = B.shape
        signs = np.array(list(product((1.0, -1.0), repeat=k))).T
        found: List[np.ndarray] = []
        for rows in combinations(range(n), k):
            active = B[list(rows)]
            if np.linalg.matrix_rank(active, tol=TAU_RANK * max(1.0, np.abs(active).max())) < k:
                continue
            candidates = np.linalg.solve(active, signs)
            feasible = np.max(np.abs(B @ candidates), axis=0) <= 1.0 + TOL_LP
            if np.any(feasible):
                found.append(candidates[:, feasible])
        return np.hstack(found) if found else np.zeros((k, 0))

    def _cross_polytope_section_vertices(self, B: np.ndarray) -> np.ndarray:
        # sommet: support S de Bt avec dim(E ∩ span e_S) = 1
        n, k = B.shape
        scale = float(np.max(np.linalg.norm(B, axis=0)))
        found: List[np.ndarray] = []
        for size in range(1, n - k + 2):
            for support in combinations(range(n), size):
                outside = [i for i in range(n) if i not in support]
                if not outside:
                    if k != 1:
                        continue
                    t = np.ones(1)
                else:
                    _, sv, vt = np.linalg.svd(B[outside], full_matrices=True)
                    rank = int(np.sum(sv > TAU_RANK * scale))
                    if k - rank != 1:
                        continue
                    t = vt[-1]
                norm = float(np.abs(B @ t).sum())
                if norm == 0.0:
                    continue
                t = t / norm
                found.extend([t, -t])
        return np.column_stack(found) if found else np.zeros((k, 0))
