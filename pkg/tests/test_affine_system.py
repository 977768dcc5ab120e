# -*- coding: utf-8 -*-

import numpy as np
import pytest

from lwpm_reduction.algebra.gf2poly import Gf2Poly
from lwpm_reduction.algebra.toeplitz import BinaryMatrix, build
from lwpm_reduction.exceptions import DimensionError, InstanceTooLargeError
from lwpm_reduction.reduction.oracle import brute_maxsat
from lwpm_reduction.sat.affine_system import (AffineSystem, exhaustive_solve, lex_key,
                                              satisfied_count, violation_count)

from .conftest import random_system


class TestEvaluation:
    def test_homogeneous_zero(self, worked_system):
        assert satisfied_count(worked_system, [0] * 5) == 7
        assert violation_count(worked_system, [0] * 5) == 0

    def test_small_system(self):
        system = AffineSystem.from_constraints(2, [([0, 1], 1), ([0], 1)])
        assert satisfied_count(system, [1, 0]) == 2
        assert satisfied_count(system, [1, 1]) == 1

    def test_worked_assignment(self, worked_system):
        # 1 + x^6 的重量为 2
        assert satisfied_count(worked_system, [1, 1, 0, 1, 1]) == 5
        assert violation_count(worked_system, [1, 1, 0, 1, 1]) == 2

    def test_length_mismatch(self, worked_system):
        with pytest.raises(DimensionError):
            satisfied_count(worked_system, [1, 0])

    def test_violation_vector(self):
        system = AffineSystem.from_constraints(2, [([0, 1], 1), ([0], 1), ([], 0)])
        assert system.violation_vector([0, 1]).tolist() == [0, 1, 0]


class TestConstruction:
    def test_from_toeplitz_rows(self, worked_system):
        assert (worked_system.m, worked_system.k) == (7, 5)
        assert worked_system.is_homogeneous()
        assert worked_system.constraint(0) == ([0], 0)
        assert worked_system.constraint(2) == ([0, 1, 2], 0)

    def test_constant_operator(self):
        system = AffineSystem.from_toeplitz(build(Gf2Poly.one(), 0))
        assert (system.m, system.k) == (1, 1)
        assert system.constraint(0) == ([0], 0)

    def test_duplicate_indices_cancel(self):
        system = AffineSystem.from_constraints(3, [([0, 2, 2], 1)])
        assert system.constraint(0) == ([0], 1)

    def test_from_matrix(self):
        matrix = BinaryMatrix.from_rows(["110", "011"])
        system = AffineSystem.from_matrix(matrix, [1, 0])
        assert system.constraint(0) == ([0, 1], 1)
        assert system.constraint(1) == ([1, 2], 0)
        assert not system.is_homogeneous()

    def test_rejects_empty_and_bad_rhs(self):
        with pytest.raises(DimensionError):
            AffineSystem(np.zeros((0, 2)))
        with pytest.raises(DimensionError):
            AffineSystem([[1, 0]], [1, 1])
        with pytest.raises(DimensionError):
            AffineSystem.from_constraints(2, [([2], 0)])

    def test_pin_substitutes(self, worked_system):
        pinned = worked_system.pin(0, 1)
        assert (pinned.m, pinned.k) == (7, 4)
        assert pinned.rhs.tolist() == [1, 1, 1, 0, 0, 0, 0]
        for bits in range(16):
            rest = [(bits >> i) & 1 for i in range(4)]
            assert pinned.violation_count(rest) == worked_system.violation_count([1] + rest)

    def test_pin_needs_two_variables(self):
        with pytest.raises(DimensionError):
            AffineSystem([[1]]).pin(0, 1)


class TestExhaustive:
    def test_single_constraint(self):
        assignment, satisfied = exhaustive_solve(AffineSystem([[1]], [1]))
        assert assignment.tolist() == [1]
        assert satisfied == 1

    def test_homogeneous_prefers_zero(self, worked_system):
        assignment, satisfied = exhaustive_solve(worked_system)
        assert not assignment.any()
        assert satisfied == 7

    def test_forbid_zero_worked(self, worked_system):
        assignment, satisfied = exhaustive_solve(worked_system, forbid_zero=True)
        assert satisfied == 5
        assert assignment.any()

    def test_contradictory_pair(self):
        system = AffineSystem.from_constraints(1, [([0], 1), ([0], 0)])
        assert exhaustive_solve(system)[1] == 1

    def test_ties_go_to_lexicographically_smallest(self):
        # x0 ⊕ x1 = 1 的最优解为 (0,1) 与 (1,0)
        system = AffineSystem.from_constraints(2, [([0, 1], 1)])
        assert exhaustive_solve(system)[0].tolist() == [0, 1]

    def test_lex_key_orders_first_variable_highest(self):
        assert lex_key(0b01, 2) > lex_key(0b10, 2)

    def test_cap(self):
        system = AffineSystem(np.ones((2, 5), dtype=np.uint8))
        with pytest.raises(InstanceTooLargeError, match="instance too large for exhaustive search"):
            exhaustive_solve(system, cap=4)

    def test_agrees_with_brute_force(self, rng):
        for _ in range(200):
            m = int(rng.integers(1, 21))
            k = int(rng.integers(1, 13))
            system = random_system(rng, m, k)
            forbid_zero = bool(rng.integers(0, 2))
            assignment, satisfied = exhaustive_solve(system, forbid_zero)
            oracle_assignment, oracle_satisfied = brute_maxsat(system, forbid_zero)
            assert satisfied == oracle_satisfied
            assert assignment.tolist() == oracle_assignment.tolist()
            assert system.satisfied_count(assignment) == satisfied
