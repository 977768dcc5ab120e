# -*- coding: utf-8 -*-

import pytest

from lwpm_reduction.algebra.gf2poly import Gf2Poly, parse_poly
from lwpm_reduction.exceptions import DimensionError, InstanceTooLargeError
from lwpm_reduction.reduction.oracle import brute_maxsat, brute_min_pm
from lwpm_reduction.sat.affine_system import AffineSystem


class TestBruteMinPm:
    def test_worked_example(self):
        multiple, weight = brute_min_pm(parse_poly("1 + x + x^2"), 7)
        assert multiple == parse_poly("1 + x^3")
        assert weight == 2

    def test_monomial(self):
        assert brute_min_pm(parse_poly("x"), 5) == (parse_poly("x"), 1)

    def test_linear_factor(self):
        assert brute_min_pm(parse_poly("1 + x"), 10)[1] == 2

    def test_constant(self):
        assert brute_min_pm(Gf2Poly.one(), 4) == (Gf2Poly.one(), 1)

    def test_ties_prefer_smallest_quotient(self):
        # x^a (1 + x^3) 都是重量2；Q = 1 + x 最小
        multiple, _ = brute_min_pm(parse_poly("1 + x + x^2"), 9)
        assert multiple == parse_poly("1 + x^3")

    def test_errors(self):
        with pytest.raises(DimensionError):
            brute_min_pm(Gf2Poly.zero(), 3)
        with pytest.raises(DimensionError):
            brute_min_pm(parse_poly("1 + x^4"), 4)
        with pytest.raises(InstanceTooLargeError):
            brute_min_pm(parse_poly("1 + x"), 40, cap=26)


class TestBruteMaxsat:
    def test_homogeneous(self, worked_system):
        assert brute_maxsat(worked_system)[1] == 7

    def test_contradictory_pair(self):
        system = AffineSystem.from_constraints(1, [([0], 1), ([0], 0)])
        assert brute_maxsat(system)[1] == 1
        assert brute_maxsat(system, forbid_zero=True)[0].tolist() == [1]

    def test_forbid_zero_worked(self, worked_system):
        assignment, satisfied = brute_maxsat(worked_system, forbid_zero=True)
        assert satisfied == 5
        # 字典序最小的重量2解：Q = x^3 + x^4，K = x^3 + x^6
        assert assignment.tolist() == [0, 0, 0, 1, 1]

    def test_cap(self, worked_system):
        with pytest.raises(InstanceTooLargeError):
            brute_maxsat(worked_system, cap=4)
