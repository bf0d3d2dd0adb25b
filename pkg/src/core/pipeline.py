"""Orchestrateur des commandes factorize / certify / opnorm."""

import platform
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np
import structlog

from .. import __version__
from ..exceptions import BapFactorError, ConvergenceError
from ..models.finite_rank_operator import FiniteRankOperator
from ..models.normed_space import NormedSpace, NormTag, Vec
from ..models.reports import StageResult
from ..models.scenario import Scenario
from ..models.splitting_plan import SplittingPlan
from ..utils.config import Config, get_config
from ..utils.logger import PerformanceMetrics
from ..utils.seeding import PRNG_NAME, make_rng
from ..utils.serialization import read_matrix, write_curve_csv, write_json
from ..utils.tolerances import RECONSTRUCTION, TAU_RANK, TOL_AUERBACH, TOL_IDENTITY
from .auerbach import verify_auerbach
from .operator import grid_operator_norm, operator_norm, restricted_operator_norm, subtract
from .scenarios import load_scenario
from .space import norm, section_extreme_points
from .splitting import GLOBAL_FACTOR, build_splitting, index_map, verify_partial_sums
from .telescope import bap_from_pointwise, partial_sums
from .yspace import (
    basis_monotonicity_check,
    certificate_from_factorization,
    cross_check_certificates,
    lift_operator_norm,
    sample_lift_boundedness,
    sample_sum_contraction,
    verify_factorization,
)

PathLike = Union[str, Path]

# dimension max pour le contrôle par grille de ``opnorm``
GRID_MAX_DIM = 3
# écart toléré grille/exact, relatif à max(1, ‖M‖)
GRID_RELATIVE = 2e-2


class StageFailed(Exception):
    """Arrêt du pipeline sur une étape dont une vérification a échoué."""

    def __init__(self, stage: str, index: Optional[int]):
        super().__init__(stage)
        self.stage = stage
        self.index = index


class FactorisationPipeline:
    """Enchaîne les étapes de factorisation et de certification d'un scénario.

    Chaque étape est chronométrée (PerformanceMetrics) et produit un
    StageResult; la première étape en échec arrête le pipeline. Le code
    de sortie vaut 0 si tout passe, 1 pour un échec de certification,
    2 pour une erreur d'entrée ou de capacité.

    Attributes:
        config: Configuration validée
        stages: Résultats des étapes exécutées

    Examples:
        >>> pipeline = FactorisationPipeline(Config.from_env())
        >>> report = pipeline.run_factorize("scenario.json", "report.json")
        >>> report["exit_code"]
        0
    """

    def __init__(self, config: Optional[Config] = None) -> None:
        self.config = config or get_config()
        self.logger = structlog.get_logger(self.__class__.__name__)
        self.stages: List[StageResult] = []
        self._current: Optional[str] = None
        self._curve: Optional[List[Dict[str, Any]]] = None

    # ------------------------------------------------------------------
    # Commandes
    # ------------------------------------------------------------------

    def run_factorize(
        self,
        scenario_path: PathLike,
        out_path: Optional[PathLike] = None,
        csv_path: Optional[PathLike] = None
    ) -> Dict[str, Any]:
        """Exécute la factorisation complète et ses certifications."""
        return self._run("factorize", scenario_path, out_path, csv_path,
                         lambda scenario, plan, seed: self._factorize_stages(scenario, plan, seed))

    def run_certify(
        self,
        scenario_path: PathLike,
        eps_list: Sequence[float],
        out_path: Optional[PathLike] = None,
        csv_path: Optional[PathLike] = None
    ) -> Dict[str, Any]:
        """Certifie la BAP dans les deux sens et compare les certificats."""
        return self._run("certify", scenario_path, out_path, csv_path,
                         lambda scenario, plan, seed: self._certify_stages(scenario, plan, seed, eps_list))

    def run_opnorm(self, matrix_path: PathLike, from_tag: str, to_tag: str) -> Dict[str, Any]:
        """Norme induite d'une matrice, avec contrôle par grille en dimension ≤ 3.

        Raises:
            BapFactorError: Fichier, format ou capacité
        """
        matrix = read_matrix(matrix_path)
        domain = NormedSpace(matrix.shape[1], NormTag.parse(from_tag))
        codomain = NormedSpace(matrix.shape[0], NormTag.parse(to_tag))
        op = FiniteRankOperator(matrix, domain, codomain)
        with PerformanceMetrics("opnorm") as metrics:
            try:
                value = operator_norm(op, self.config.max_enum_dim)
            except np.linalg.LinAlgError as e:
                raise ConvergenceError.linalg_failure("opnorm", str(e)) from e
            metrics.add_metric("shape", list(op.shape))
        result: Dict[str, Any] = {
            "from": domain.norm_tag.value,
            "to": codomain.norm_tag.value,
            "shape": list(op.shape),
            "norm": value
        }
        if domain.dim <= GRID_MAX_DIM:
            grid = grid_operator_norm(op)
            tolerance = GRID_RELATIVE * max(1.0, value)
            result["grid"] = {
                "norm": grid,
                "difference": value - grid,
                "tolerance": tolerance,
                "passed": abs(value - grid) <= tolerance
            }
        return result

    # ------------------------------------------------------------------
    # Étapes
    # ------------------------------------------------------------------

    def _run(
        self,
        command: str,
        scenario_path: PathLike,
        out_path: Optional[PathLike],
        csv_path: Optional[PathLike],
        body: Callable[[Scenario, SplittingPlan, int], None]
    ) -> Dict[str, Any]:
        started = time.perf_counter()
        self.stages = []
        scenario: Optional[Scenario] = None
        seed = 0
        failure: Optional[Dict[str, Any]] = None
        exit_code = 0
        self._curve = None

        try:
            scenario = self._stage("load", lambda: self._load(scenario_path))
            seed = scenario.seed if scenario.seed is not None else 0
            plan = self._stage("splitting", lambda: self._split(scenario))
            body(scenario, plan, seed)
        except StageFailed as e:
            exit_code = 1
            failure = {"stage": e.stage, "index": e.index}
        except BapFactorError as e:
            exit_code = e.exit_code
            failure = {"stage": self._current, "index": e.context.get("index",
                       e.context.get("prefix_length")), "error": e.to_dict()}
            self.logger.error("pipeline_failed", command=command, stage=self._current,
                              error_code=e.error_code, message=e.message)

        if csv_path is not None and self._curve is not None:
            write_curve_csv(csv_path, self._curve)

        report = {
            "command": command,
            "scenario": scenario.summary() if scenario is not None else None,
            "seed": seed,
            "prng": PRNG_NAME,
            "versions": {
                "bapfactor": __version__,
                "numpy": np.__version__,
                "python": platform.python_version()
            },
            "stages": [stage.to_dict() for stage in self.stages],
            "passed": exit_code == 0,
            "exit_code": exit_code,
            "failure": failure,
            "wall_time_s": time.perf_counter() - started
        }
        if out_path is not None:
            write_json(out_path, report)
        self.logger.info("pipeline_finished", command=command, exit_code=exit_code,
                         stages=len(self.stages))
        return report

    def _stage(self, name: str, action: Callable[[], Any]) -> Any:
        self._current = name
        with PerformanceMetrics(name) as metrics:
            try:
                passed, details, index, payload = action()
            except np.linalg.LinAlgError as e:
                raise ConvergenceError.linalg_failure(name, str(e)) from e
            metrics.add_metric("passed", passed)
        self.stages.append(StageResult(name, passed, details, metrics.duration_ms))
        self.logger.info("stage_completed", stage=name, passed=passed)
        if not passed:
            raise StageFailed(name, index)
        return payload

    def _load(self, scenario_path: PathLike):
        scenario = load_scenario(scenario_path, self.config)
        return True, scenario.summary(), None, scenario

    def _split(self, scenario: Scenario):
        plan = build_splitting(scenario.operators(), scenario.K, self.config)
        return True, plan.summary(), None, plan

    def _partial_sums(self, plan: SplittingPlan):
        report = verify_partial_sums(plan)
        reconstruction = operator_norm(subtract(
            _atoms_total(plan), plan.total
        )) if plan.atom_count else operator_norm(plan.total)
        threshold = RECONSTRUCTION * max(1.0, plan.norm_T)
        block_residuals = _block_residuals(plan)
        bad_blocks = [p for p, value in enumerate(block_residuals, start=1) if value > threshold]
        reconstruction_ok = reconstruction <= threshold and not bad_blocks
        image_residual = _max_image_residual(plan)
        details = report.to_dict()
        details["reconstruction"] = {
            "residual": reconstruction,
            "block_residuals": block_residuals,
            "passed": reconstruction_ok
        }
        details["atom_images"] = {"residual": image_residual, "passed": image_residual <= TAU_RANK}
        misplaced = _misplaced_atoms(plan)
        details["atom_index"] = {"misplaced": misplaced, "passed": not misplaced}
        passed = (report.passed and reconstruction_ok and details["atom_images"]["passed"]
                  and not misplaced)
        # bloc fautif d'abord, puis indice de la première borne violée
        candidates = bad_blocks + [v.index for v in report.violations] + misplaced
        index = candidates[0] if candidates else None
        self._curve = report.curve_rows()
        return passed, details, index, report

    def _auerbach(self, plan: SplittingPlan):
        blocks = []
        passed = True
        index = None
        for record in plan.blocks:
            if record.is_zero:
                continue
            audit = verify_auerbach(record.auerbach)
            sub = record.subspace
            points = None
            if sub.space.norm_tag is not NormTag.L2:
                points = section_extreme_points(sub.space, sub)
            projection_norms = [restricted_operator_norm(B, sub, points) for B in record.projections]
            norms_ok = all(abs(v - 1.0) <= TOL_AUERBACH for v in projection_norms)
            identity = sum(C.matrix for C in record.c_ops)
            identity_residual = float(np.max(np.abs(identity @ sub.columns - sub.columns)))
            identity_ok = identity_residual <= TOL_IDENTITY * max(1.0, float(np.max(np.abs(sub.columns))))
            block_ok = audit.passed and norms_ok and identity_ok
            if not block_ok and passed:
                passed, index = False, record.index
            blocks.append({
                "block": record.index,
                "m": record.m,
                "det_value": record.auerbach.det_value,
                "cycles": record.auerbach.cycles,
                "residuals": audit.to_dict(),
                "projection_norms": projection_norms,
                "identity_residual": identity_residual,
                "passed": block_ok
            })
        return passed, {"blocks": blocks}, index, None

    def _test_vectors(self, space: NormedSpace, count: int, seed: int) -> List[Vec]:
        rng = make_rng(seed)
        vectors = []
        while len(vectors) < count:
            coords = rng.standard_normal(space.dim)
            size = norm(space, coords)
            if size > 0:
                vectors.append(Vec(coords / size, space))
        return vectors

    def _factorize_stages(self, scenario: Scenario, plan: SplittingPlan, seed: int) -> None:
        tests = self._test_vectors(plan.x_space, self.config.test_vector_count, seed)
        self._stage("auerbach", lambda: self._auerbach(plan))
        partial_report = self._stage("partial_sums", lambda: self._partial_sums(plan))

        def factorization():
            report = verify_factorization(plan, plan.total, tests)
            index = report.failures[0] + 1 if report.failures else None
            details = report.to_dict()
            details.pop("residuals")
            return report.passed, details, index, None

        def y_space():
            contraction = sample_sum_contraction(plan, self.config.y_sample_count, seed)
            boundedness = sample_lift_boundedness(plan, tests)
            details = {
                "sum_contraction": contraction.to_dict(),
                "lift_boundedness": boundedness.to_dict(),
                "lift_operator_norm": lift_operator_norm(plan, partial_report),
                "lift_bound": GLOBAL_FACTOR * plan.K * plan.norm_T
            }
            passed = contraction.passed and boundedness.passed
            failed = contraction.violations or boundedness.violations
            return passed, details, (failed[0] + 1 if failed else None), None

        def monotonicity():
            report = basis_monotonicity_check(plan, self.config.monotonicity_samples, seed)
            return report.passed, report.to_dict(), None, None

        def converse():
            certificate = certificate_from_factorization(plan)
            return True, certificate.to_dict(), None, None

        self._stage("factorization", factorization)
        self._stage("y_space", y_space)
        self._stage("monotonicity", monotonicity)
        self._stage("converse_certificate", converse)

    def _certify_stages(self, scenario: Scenario, plan: SplittingPlan, seed: int,
                        eps_list: Sequence[float]) -> None:
        tests = self._test_vectors(plan.x_space, self.config.test_vector_count, seed)
        self._stage("partial_sums", lambda: self._partial_sums(plan))
        holder: Dict[str, Any] = {}

        def pointwise():
            S_list = partial_sums(scenario.operators())
            holder["pointwise"] = bap_from_pointwise(plan.total, S_list, tests, scenario.K, eps_list)
            return True, holder["pointwise"].to_dict(), None, None

        def factorization():
            holder["factorization"] = certificate_from_factorization(plan)
            return True, holder["factorization"].to_dict(), None, None

        def cross_check():
            report = cross_check_certificates(holder["pointwise"], holder["factorization"], plan)
            return report.passed, report.to_dict(), report.first_mismatch, None

        self._stage("pointwise_certificate", pointwise)
        self._stage("factorization_certificate", factorization)
        self._stage("cross_check", cross_check)


def _atoms_total(plan: SplittingPlan) -> FiniteRankOperator:
    return FiniteRankOperator(sum(atom.matrix() for atom in plan.atoms), plan.x_space, plan.w_space)


def _block_residuals(plan: SplittingPlan) -> List[float]:
    """‖Σ_{s du bloc p} Ã_s − A_p‖ pour chaque bloc (0 atome pour un bloc nul)."""
    sums = [np.zeros_like(record.operator.matrix) for record in plan.blocks]
    for atom in plan.atoms:
        sums[atom.block - 1] = sums[atom.block - 1] + atom.matrix()
    return [
        operator_norm(FiniteRankOperator(total - record.operator.matrix, plan.x_space, plan.w_space))
        for total, record in zip(sums, plan.blocks)
    ]


def _misplaced_atoms(plan: SplittingPlan) -> List[int]:
    """Indices s dont l'atome ne vérifie pas s = index_map(m_list, p, i)."""
    return [
        s for s, atom in enumerate(plan.atoms, start=1)
        if index_map(plan.m_list, atom.block, atom.position) != s
    ]


def _max_image_residual(plan: SplittingPlan) -> float:
    """Distance relative maximale de l'image d'un atome à E_p."""
    worst = 0.0
    for atom, (p, _) in zip(plan.atoms, plan.index):
        basis = plan.blocks[p - 1].subspace.columns
        coords, *_ = np.linalg.lstsq(basis, atom.vector, rcond=None)
        scale = max(1.0, float(np.max(np.abs(atom.vector))))
        worst = max(worst, float(np.max(np.abs(basis @ coords - atom.vector))) / scale)
    return worst
