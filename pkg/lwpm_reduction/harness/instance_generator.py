# -*- coding: utf-8 -*-
"""
随机实例生成器
提供实验用的随机 0/1 矩阵、右端项、多项式和 MIN-PM 实例
所有方法只依赖传入的种子或生成器，结果可复现
"""

from typing import Optional, Tuple

import numpy as np

from ..algebra.gf2poly import Gf2Poly
from ..algebra.toeplitz import BinaryMatrix
from ..exceptions import DimensionError
from ..reduction.min_pm import MinPmInstance
from ..sat.affine_system import AffineSystem
from ..sat.metaheuristics import make_rng

RHS_HOMOGENEOUS = "homogeneous"
RHS_RANDOM = "random"
RHS_MODES = (RHS_HOMOGENEOUS, RHS_RANDOM)


class InstanceGenerator:
    """随机实例生成器"""

    @staticmethod
    def gen_random_matrix(m: int, k: int, density: float = 0.5, seed: int = 0) -> BinaryMatrix:
        """
        生成 m×k 随机矩阵，每个元素独立地以概率 density 取1

        Args:
            m, k: 行数、列数
            density: (0, 1] 内的密度
            seed: 随机种子

        Returns:
            BinaryMatrix: 生成的矩阵
        """
        if m < 1 or k < 1:
            raise DimensionError(f"matrix needs m >= 1 and k >= 1, got {m}x{k}")
        if not 0 < density <= 1:
            raise DimensionError(f"density must lie in (0, 1], got {density}")
        rng = make_rng(seed)
        entries = (rng.random((m, k)) < density).astype(np.uint8)
        return BinaryMatrix(entries)

    @staticmethod
    def gen_rhs(m: int, mode: str = RHS_HOMOGENEOUS, seed: int = 0) -> Optional[np.ndarray]:
        """齐次时返回 None，否则返回均匀随机的 m 位右端项"""
        if mode not in RHS_MODES:
            raise DimensionError(f"unknown rhs mode {mode!r}")
        if mode == RHS_HOMOGENEOUS:
            return None
        # 与矩阵共用种子时避开同一条随机流
        rng = make_rng(seed + 2 ** 32)
        return rng.integers(0, 2, size=m, dtype=np.uint8)

    @staticmethod
    def gen_random_system(m: int, k: int, density: float = 0.5, seed: int = 0,
                          mode: str = RHS_RANDOM) -> AffineSystem:
        matrix = InstanceGenerator.gen_random_matrix(m, k, density, seed)
        return AffineSystem.from_matrix(matrix, InstanceGenerator.gen_rhs(m, mode, seed))

    @staticmethod
    def gen_random_poly(max_degree: int, rng: np.random.Generator) -> Gf2Poly:
        """次数在 0..max_degree 内均匀选取、首项系数为1的随机多项式"""
        if max_degree < 0:
            raise DimensionError("max_degree must be non-negative")
        d = int(rng.integers(0, max_degree + 1))
        coefficients = rng.integers(0, 2, size=d + 1, dtype=np.uint8)
        coefficients[d] = 1
        return Gf2Poly.from_bits(coefficients)

    @staticmethod
    def gen_min_pm_instance(max_degree: int, max_t: int,
                            rng: np.random.Generator) -> MinPmInstance:
        """随机 (P, n)，其中 t = n - d - 1 在 0..max_t 内均匀选取"""
        poly = InstanceGenerator.gen_random_poly(max_degree, rng)
        t = int(rng.integers(0, max_t + 1))
        return MinPmInstance(poly, poly.degree + t + 1)

    @staticmethod
    def gen_poly_pair(max_degree: int, rng: np.random.Generator) -> Tuple[Gf2Poly, Gf2Poly]:
        """(P, Q)，两者均非零"""
        return (InstanceGenerator.gen_random_poly(max_degree, rng),
                InstanceGenerator.gen_random_poly(max_degree, rng))
