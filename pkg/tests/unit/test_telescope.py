"""Tests unitaires pour le télescopage et les certificats BAP."""

import numpy as np
import pytest

from src.core.operator import identity, operator_norm, scale, zero_operator
from src.core.telescope import (
    BlockTruncationOracle,
    NetVariant,
    bap_from_pointwise,
    certify_finite_set,
    continuity_radius,
    net_tolerance,
    partial_sums,
    pointwise_from_bap,
    query_schedule,
    telescope,
)
from src.exceptions import CertificationError, ProtocolError, ValidationError
from src.models.finite_rank_operator import FiniteRankOperator
from src.models.normed_space import NormedSpace, NormTag, Vec


@pytest.fixture
def l2_4() -> NormedSpace:
    return NormedSpace(4, NormTag.L2)


@pytest.fixture
def random_ops(l2_4):
    rng = np.random.default_rng(42)
    return [FiniteRankOperator(rng.standard_normal((4, 4)), l2_4, l2_4) for _ in range(3)]


@pytest.fixture
def unit_tests(l2_4):
    rng = np.random.default_rng(43)
    vectors = []
    for _ in range(20):
        coords = rng.standard_normal(4)
        vectors.append(Vec(coords / np.linalg.norm(coords), l2_4))
    return vectors


class TestTelescope:
    """Différences successives et sommes partielles."""

    def test_single(self, l2_4):
        S = identity(l2_4)
        assert telescope([S]) == [S]

    def test_stabilized_sequence(self, l2_4):
        S = identity(l2_4)
        Q = telescope([S, S, S])
        np.testing.assert_array_equal(Q[0].matrix, np.eye(4))
        assert not np.any(Q[1].matrix)
        assert not np.any(Q[2].matrix)

    def test_resummation(self, random_ops):
        for S, R in zip(random_ops, partial_sums(telescope(random_ops))):
            np.testing.assert_allclose(R.matrix, S.matrix, atol=1e-12)

    @pytest.mark.parametrize("tag", list(NormTag))
    @pytest.mark.parametrize("length", [1, 2, 5, 9])
    def test_round_trips_on_random_lists(self, tag, length):
        rng = np.random.default_rng(length)
        X, W = NormedSpace(3, tag), NormedSpace(2, tag)
        ops = [FiniteRankOperator(rng.standard_normal((2, 3)), X, W) for _ in range(length)]
        for S, R in zip(ops, partial_sums(telescope(ops))):
            np.testing.assert_allclose(R.matrix, S.matrix, atol=1e-12)
        for Q, R in zip(ops, telescope(partial_sums(ops))):
            np.testing.assert_allclose(R.matrix, Q.matrix, atol=1e-12)
        assert len(telescope(ops)) == len(partial_sums(ops)) == length

    def test_partial_sums_single(self, l2_4):
        Q = identity(l2_4)
        assert partial_sums([Q]) == [Q]

    def test_partial_sums_cancel(self, l2_4):
        I = identity(l2_4)
        sums = partial_sums([I, scale(I, -1.0)])
        np.testing.assert_array_equal(sums[0].matrix, np.eye(4))
        assert not np.any(sums[1].matrix)

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            telescope([])
        with pytest.raises(ValidationError):
            partial_sums([])


class TestNetTolerance:
    """Rayons ε₀ des réseaux finis."""

    def test_finite_family(self):
        assert net_tolerance(1.0, 1.0, 1.0, NetVariant.FINITE_FAMILY) == pytest.approx(1.0 / 3.0)

    def test_pointwise_limit(self):
        assert net_tolerance(3.0, 2.0, 1.0, NetVariant.POINTWISE_LIMIT) == 0.75

    @pytest.mark.parametrize("variant", list(NetVariant))
    def test_zero_eps(self, variant):
        assert net_tolerance(0.0, 4.0, 1.0, variant) == 0.0

    def test_finite_family_requires_normalization(self):
        with pytest.raises(ValidationError) as exc_info:
            net_tolerance(1.0, 1.0, 2.0, NetVariant.FINITE_FAMILY)
        assert exc_info.value.error_code == "NORMALIZATION_REQUIRED"

    def test_pointwise_limit_general_norm(self):
        assert net_tolerance(7.0, 1.0, 3.0, NetVariant.POINTWISE_LIMIT) == 1.0

    @pytest.mark.parametrize("eps,C,norm_T", [(-1.0, 1.0, 1.0), (1.0, 0.5, 1.0), (1.0, 1.0, -1.0)])
    def test_out_of_range(self, eps, C, norm_T):
        with pytest.raises(ValidationError):
            net_tolerance(eps, C, norm_T, NetVariant.POINTWISE_LIMIT)

    def test_continuity_radius(self):
        delta = continuity_radius(1.0, 2.0, 3.0)
        assert delta == 0.1
        assert 2.0 * delta + 3.0 * delta < 1.0


class TestCertifyFiniteSet:
    """Vérification (‖R‖ ≤ C‖T‖, sup ‖Rx − Tx‖ ≤ ε) sur un ensemble fini."""

    def test_identical_operators(self, random_ops, unit_tests):
        report = certify_finite_set(random_ops[0], random_ops[0], unit_tests, 0.0, 1.0)
        assert report.passed
        assert report.sup_error == 0.0

    def test_zero_approximant_fails(self):
        space = NormedSpace(2, NormTag.L2)
        report = certify_finite_set(identity(space), zero_operator(space, space),
                                    [Vec([1.0, 0.0], space)], 0.5, 1.0)
        assert report.sup_error == 1.0
        assert not report.passed

    def test_sup_error_matches_direct_evaluation(self, random_ops, unit_tests, l2_4):
        T = random_ops[0]
        truncated = FiniteRankOperator(np.triu(T.matrix), l2_4, l2_4)
        report = certify_finite_set(T, truncated, unit_tests, 1.0, 10.0)
        direct = max(np.linalg.norm((truncated.matrix - T.matrix) @ x.coords) for x in unit_tests)
        assert report.sup_error == pytest.approx(direct, abs=1e-12)


class TestBapFromPointwise:
    """Émission de certificats C-BAP."""

    def test_single_exact_approximant(self, random_ops, unit_tests):
        T = random_ops[0]
        certificate = bap_from_pointwise(T, [T], unit_tests, 1.0)
        assert certificate.epsilon_schedule == (0.0,)
        assert certificate.witness_indices == (1,)

    def test_block_partial_sums_reach_zero(self, l2_4, unit_tests):
        blocks = [scale(identity(l2_4), 0.5 ** p) for p in range(1, 4)]
        T = partial_sums(blocks)[-1]
        certificate = bap_from_pointwise(T, partial_sums(blocks), unit_tests, 1.0, (0.0, 0.5))
        assert certificate.residuals[-1] == 0.0
        assert certificate.witness_indices[0] == 3
        # ‖S₁ − T‖ = 3/8 ≤ 1/2
        assert certificate.witness_indices[1] == 1

    def test_norm_violation_localized(self, l2_4, unit_tests):
        T = identity(l2_4)
        R_list = [T, scale(T, 2.0), T]
        with pytest.raises(CertificationError) as exc_info:
            bap_from_pointwise(T, R_list, unit_tests, 1.0)
        assert exc_info.value.index == 2
        assert exc_info.value.error_code == "APPROXIMANT_NORM_BOUND_VIOLATED"

    def test_epsilon_not_reached(self, l2_4, unit_tests):
        T = identity(l2_4)
        with pytest.raises(CertificationError) as exc_info:
            bap_from_pointwise(T, [scale(T, 0.5)], unit_tests, 1.0, (0.1,))
        assert exc_info.value.error_code == "EPSILON_NOT_REACHED"

    def test_test_set_in_wrong_space(self, l2_4):
        other = NormedSpace(4, NormTag.L1)
        with pytest.raises(ValidationError):
            bap_from_pointwise(identity(l2_4), [identity(l2_4)], [Vec(np.ones(4), other)], 1.0)

    def test_empty_list(self, l2_4):
        with pytest.raises(ValidationError):
            bap_from_pointwise(identity(l2_4), [], [], 1.0)


class TestPointwiseFromBap:
    """Construction d'une suite ponctuelle à partir d'un oracle BAP."""

    def test_schedule(self):
        assert query_schedule(3) == [0.25, 0.125, 0.0625]

    def test_schedule_scaled_by_norm(self):
        assert query_schedule(2, 4.0) == [1.0, 0.5]

    def test_oracle_returning_target(self, random_ops, unit_tests):
        T = random_ops[0]
        R_list = pointwise_from_bap(lambda F, eps: T, T, unit_tests, 3, 1.0)
        assert len(R_list) == 3
        assert all(R is T for R in R_list)

    def test_block_truncation_responder(self, l2_4, unit_tests):
        blocks = [scale(identity(l2_4), 0.5 ** p) for p in range(1, 6)]
        oracle = BlockTruncationOracle(blocks)
        T = oracle.target
        depth = 4
        R_list = pointwise_from_bap(oracle, T, unit_tests, depth, 1.0)
        assert oracle.calls == depth
        norm_T = operator_norm(T)
        for N, R in enumerate(R_list, start=1):
            assert operator_norm(R) <= norm_T + 1e-12
            for x in unit_tests[:N]:
                error = np.linalg.norm((R.matrix - T.matrix) @ x.coords)
                assert error <= norm_T / 2.0 ** (N + 1) + 1e-12

    def test_round_trip_preserves_constant(self, l2_4, unit_tests):
        blocks = [scale(identity(l2_4), 0.5 ** p) for p in range(1, 6)]
        oracle = BlockTruncationOracle(blocks)
        R_list = pointwise_from_bap(oracle, oracle.target, unit_tests, 5, 1.0)
        certificate = bap_from_pointwise(oracle.target, R_list, unit_tests, 1.0, (0.0,))
        assert certificate.C == 1.0
        assert max(certificate.approximant_norms) <= certificate.bound + 1e-12

    def test_oracle_norm_violation(self, l2_4, unit_tests):
        T = identity(l2_4)
        with pytest.raises(ProtocolError) as exc_info:
            pointwise_from_bap(lambda F, eps: scale(T, 3.0), T, unit_tests, 2, 1.0)
        assert exc_info.value.index == 1

    def test_oracle_error_violation(self, l2_4, unit_tests):
        T = identity(l2_4)
        with pytest.raises(ProtocolError) as exc_info:
            pointwise_from_bap(lambda F, eps: zero_operator(l2_4, l2_4), T, unit_tests, 2, 1.0)
        assert exc_info.value.context["eps"] == 0.25

    def test_oracle_wrong_spaces(self, l2_4, unit_tests):
        other = NormedSpace(4, NormTag.L1)
        with pytest.raises(ProtocolError):
            pointwise_from_bap(lambda F, eps: identity(other), identity(l2_4), unit_tests, 1, 1.0)

    def test_invalid_depth(self, l2_4, unit_tests):
        with pytest.raises(ValidationError):
            pointwise_from_bap(lambda F, eps: identity(l2_4), identity(l2_4), unit_tests, 0, 1.0)
