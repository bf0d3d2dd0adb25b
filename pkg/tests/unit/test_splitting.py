"""Tests unitaires pour le découpage en atomes de rang un."""

from dataclasses import replace
from itertools import product

import numpy as np
import pytest

from src.core.auerbach import auerbach_projections, auerbach_system
from src.core.operator import operator_norm, range_basis, scale
from src.core.splitting import (
    block_boundaries,
    build_splitting,
    global_curve_norms,
    index_inverse,
    index_map,
    split_block,
    verify_partial_sums,
)
from src.exceptions import ValidationError
from src.models.finite_rank_operator import FiniteRankOperator
from src.models.normed_space import NormedSpace, NormTag
from src.utils.config import Config


def partial_sum_constant(blocks):
    """Plus petit K (≥ 1) compatible avec les sommes partielles, avec une marge relative 10⁻⁶."""
    X, W = blocks[0].domain, blocks[0].codomain
    total = operator_norm(FiniteRankOperator(sum(b.matrix for b in blocks), X, W))
    running = np.zeros_like(blocks[0].matrix)
    K = 1.0
    for b in blocks:
        running = running + b.matrix
        K = max(K, operator_norm(FiniteRankOperator(running, X, W)) / total)
    return K * (1.0 + 1e-6)


@pytest.fixture
def identity_plan(identity_linf2, test_config):
    return build_splitting([identity_linf2], 1.0, test_config)


class TestSplitBlock:
    """Les m² opérateurs C_i ∘ A_p."""

    def test_rank_one_block(self, linf2):
        A = FiniteRankOperator(np.outer([1.0, 2.0], [1.0, -1.0]), linf2, linf2)
        system = auerbach_system(range_basis(A).basis)
        (entry,) = split_block(A, system)
        np.testing.assert_allclose(entry.matrix, A.matrix, atol=1e-12)

    def test_two_dimensional_order(self, identity_linf2):
        system = auerbach_system(range_basis(identity_linf2).basis)
        B1, B2 = auerbach_projections(system)
        entries = split_block(identity_linf2, system)
        assert len(entries) == 4
        for entry, B in zip(entries, [B1, B2, B1, B2]):
            np.testing.assert_allclose(entry.matrix, 0.5 * B.matrix, atol=1e-12)

    def test_random_rank_two_block_sums_back(self, make_operator):
        space = NormedSpace(3, NormTag.L1)
        A = make_operator(space, space, 2)
        entries = split_block(A, auerbach_system(range_basis(A).basis))
        total = sum(entry.matrix for entry in entries)
        assert np.max(np.abs(total - A.matrix)) < 1e-9

    def test_zero_block(self, linf2):
        assert split_block(FiniteRankOperator(np.zeros((2, 2)), linf2, linf2), None) == []


class TestIndexMap:
    """s = m₀² + ⋯ + m_{p−1}² + i."""

    def test_first_block(self):
        assert index_map([2, 3], 1, 1) == 1

    def test_second_block(self):
        assert index_map([2, 3], 2, 1) == 5

    def test_round_trip(self):
        m_list = [1, 2, 3]
        seen = []
        for p, m in enumerate(m_list, start=1):
            for i in range(1, m * m + 1):
                s = index_map(m_list, p, i)
                assert index_inverse(m_list, s) == (p, i)
                seen.append(s)
        assert seen == list(range(1, 15))

    @pytest.mark.parametrize("p,i", [(0, 1), (3, 1), (1, 5), (2, 0)])
    def test_out_of_range(self, p, i):
        with pytest.raises(ValidationError):
            index_map([2, 3], p, i)

    def test_inverse_out_of_range(self):
        with pytest.raises(ValidationError):
            index_inverse([2, 3], 14)

    def test_zero_block_has_no_indices(self):
        assert index_map([1, 0, 2], 3, 1) == 2
        assert index_inverse([1, 0, 2], 2) == (3, 1)

    @pytest.mark.parametrize("m_list,expected", [
        ([2, 3], (4, 13)),
        ([2, 0, 1], (4, 4, 5)),
        ([0, 0], (0, 0)),
    ])
    def test_block_boundaries(self, m_list, expected):
        assert block_boundaries(m_list) == expected


class TestBuildSplitting:
    """Plan complet: atomes, droites et métadonnées."""

    def test_single_rank_one_block(self, linf2, test_config):
        T = FiniteRankOperator(np.outer([1.0, 0.5], [2.0, 1.0]), linf2, linf2)
        plan = build_splitting([T], 1.0, test_config)
        assert plan.atom_count == 1
        np.testing.assert_allclose(plan.atoms[0].matrix(), T.matrix, atol=1e-12)

    def test_identity_on_cube(self, identity_plan):
        assert identity_plan.atom_count == 4
        assert identity_plan.m_list == (2,)
        expected = [np.diag([0.5, 0.0]), np.diag([0.0, 0.5])] * 2
        for atom, matrix in zip(identity_plan.atoms, expected):
            np.testing.assert_allclose(atom.matrix(), matrix, atol=1e-12)
        assert identity_plan.index == ((1, 1), (1, 2), (1, 3), (1, 4))

    def test_lines_are_unit_vectors(self, identity_plan):
        for atom in identity_plan.atoms:
            assert np.max(np.abs(atom.line)) == pytest.approx(1.0)

    def test_two_random_blocks(self, make_operator, test_config):
        space = NormedSpace(3, NormTag.L2)
        blocks = [make_operator(space, space, 1), make_operator(space, space, 2)]
        K = max(1.0, operator_norm(blocks[0]) / operator_norm(FiniteRankOperator(
            blocks[0].matrix + blocks[1].matrix, space, space)))
        plan = build_splitting(blocks, K * (1.0 + 1e-6), test_config)
        assert plan.atom_count == 5
        assert plan.m_list == (1, 2)
        total = sum(atom.matrix() for atom in plan.atoms)
        np.testing.assert_allclose(total, blocks[0].matrix + blocks[1].matrix, atol=1e-9)

    def test_atoms_are_split_block_entries(self, make_operator, test_config):
        space = NormedSpace(3, NormTag.L1)
        blocks = [make_operator(space, space, 2), scale(make_operator(space, space, 1), 0.5),
                  make_operator(space, space, 3)]
        plan = build_splitting(blocks, partial_sum_constant(blocks), test_config)
        assert plan.m_list == (2, 1, 3)
        for record in plan.blocks:
            entries = split_block(record.operator, record.auerbach)
            assert len(entries) == record.m ** 2
            for i, entry in enumerate(entries, start=1):
                atom = plan.atoms[index_map(plan.m_list, record.index, i) - 1]
                assert (atom.block, atom.position) == (record.index, i)
                np.testing.assert_allclose(atom.matrix(), entry.matrix, atol=1e-12)

    def test_index_is_inverse_of_index_map(self, make_operator, test_config):
        space = NormedSpace(3, NormTag.LINF)
        zero = FiniteRankOperator(np.zeros((3, 3)), space, space)
        blocks = [make_operator(space, space, 2), zero, make_operator(space, space, 1)]
        plan = build_splitting(blocks, partial_sum_constant(blocks), test_config)
        assert plan.m_list == (2, 0, 1)
        assert plan.index == ((1, 1), (1, 2), (1, 3), (1, 4), (3, 1))
        for s, (p, i) in enumerate(plan.index, start=1):
            assert index_map(plan.m_list, p, i) == s

    def test_zero_block_yields_no_atoms(self, identity_linf2, linf2, test_config):
        zero = FiniteRankOperator(np.zeros((2, 2)), linf2, linf2)
        plan = build_splitting([identity_linf2, zero], 1.0, test_config)
        assert plan.m_list == (2, 0)
        assert plan.atom_count == 4
        assert plan.blocks[1].is_zero

    def test_partial_sum_violation_names_prefix(self, identity_linf2, test_config):
        blocks = [scale(identity_linf2, 2.0), scale(identity_linf2, -1.0)]
        with pytest.raises(ValidationError) as exc_info:
            build_splitting(blocks, 1.0, test_config)
        assert exc_info.value.error_code == "PARTIAL_SUM_BOUND_VIOLATED"
        assert exc_info.value.context["prefix_length"] == 1

    def test_rejects_small_K(self, identity_linf2, test_config):
        with pytest.raises(ValidationError):
            build_splitting([identity_linf2], 0.5, test_config)

    def test_rejects_empty(self, test_config):
        with pytest.raises(ValidationError):
            build_splitting([], 1.0, test_config)

    def test_parallel_matches_sequential(self, make_operator):
        space = NormedSpace(3, NormTag.LINF)
        blocks = [scale(make_operator(space, space, r), 0.5 ** p) for p, r in enumerate([1, 2, 1], 1)]
        total = FiniteRankOperator(sum(b.matrix for b in blocks), space, space)
        running = np.zeros((3, 3))
        K = 1.0
        for b in blocks:
            running = running + b.matrix
            K = max(K, operator_norm(FiniteRankOperator(running, space, space)) / operator_norm(total))
        K *= 1.0 + 1e-6
        sequential = build_splitting(blocks, K, Config(max_workers=1))
        parallel = build_splitting(blocks, K, Config(max_workers=3))
        for a, b in zip(sequential.atoms, parallel.atoms):
            np.testing.assert_array_equal(a.matrix(), b.matrix())


class TestVerifyPartialSums:
    """Courbes et bornes 2, 5K, 2K."""

    def test_identity_plan_bounds(self, identity_plan):
        report = verify_partial_sums(identity_plan)
        assert report.passed
        assert report.within_block_max <= 2.0 + 1e-7
        assert report.global_max <= 5.0 + 1e-7
        np.testing.assert_allclose([pt.norm for pt in report.within_block[0]], [0.5, 0.5, 1.0, 1.0])
        np.testing.assert_allclose([pt.norm for pt in report.global_curve], [0.5, 0.5, 1.0, 1.0])
        assert report.four_k_observed

    def test_curve_rows(self, identity_plan):
        rows = verify_partial_sums(identity_plan).curve_rows()
        assert [row["n"] for row in rows] == [1, 2, 3, 4]
        assert rows[0]["margin"] == pytest.approx(4.5)

    def test_global_curve_norms(self, identity_plan):
        assert global_curve_norms(identity_plan) == pytest.approx([0.5, 0.5, 1.0, 1.0])

    def test_scaled_atom_reported(self, identity_plan):
        atoms = list(identity_plan.atoms)
        atoms[2] = atoms[2].scaled(10.0)
        broken = replace(identity_plan, atoms=tuple(atoms))
        report = verify_partial_sums(broken)
        assert not report.passed
        violations = [v for v in report.violations if v.kind == "global"]
        assert violations[0].index == 3
        assert violations[0].norm == pytest.approx(5.5)

    @pytest.mark.parametrize("d_tag,c_tag", list(product(NormTag, NormTag)))
    def test_random_plans_within_bounds(self, d_tag, c_tag, make_operator, test_config):
        X, W = NormedSpace(3, d_tag), NormedSpace(3, c_tag)
        blocks = [scale(make_operator(X, W, r), 0.5 ** p) for p, r in enumerate([2, 1, 2], 1)]
        plan = build_splitting(blocks, partial_sum_constant(blocks), test_config)
        report = verify_partial_sums(plan)
        assert report.within_block_max <= 2.0 + 1e-7
        assert report.global_max <= 5.0 * plan.K * plan.norm_T + 1e-7
        assert all(pt.norm <= pt.bound + 1e-7 for pt in report.block_norms)
