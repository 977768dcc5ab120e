# -*- coding: utf-8 -*-
"""
测试共用的实例
"""

import numpy as np
import pytest

from lwpm_reduction.algebra.gf2poly import parse_poly
from lwpm_reduction.algebra.toeplitz import build
from lwpm_reduction.reduction.min_pm import MinPmInstance
from lwpm_reduction.sat.affine_system import AffineSystem
from lwpm_reduction.sat.metaheuristics import make_rng

# build(1 + x + x^2, 4) 的显式矩阵
WORKED_MATRIX = [
    [1, 0, 0, 0, 0],
    [1, 1, 0, 0, 0],
    [1, 1, 1, 0, 0],
    [0, 1, 1, 1, 0],
    [0, 0, 1, 1, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]


@pytest.fixture
def worked_poly():
    return parse_poly("1 + x + x^2")


@pytest.fixture
def worked_operator(worked_poly):
    return build(worked_poly, 4)


@pytest.fixture
def worked_system(worked_operator):
    return AffineSystem.from_toeplitz(worked_operator)


@pytest.fixture
def worked_instance(worked_poly):
    return MinPmInstance(worked_poly, 7)


@pytest.fixture
def rng():
    return make_rng(20240601)


def random_system(rng: np.random.Generator, m: int, k: int) -> AffineSystem:
    coefficients = rng.integers(0, 2, size=(m, k))
    rhs = rng.integers(0, 2, size=m)
    return AffineSystem(coefficients, rhs)
