# -*- coding: utf-8 -*-
"""
仿射约束系统模块
m 个形如 x_{i1} ⊕ … ⊕ x_{iℓ} = b 的约束，k 个布尔变量
以稠密的 m×k 系数矩阵加 m 位右端项存储
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.gf2poly import popcount
from ..algebra.toeplitz import BinaryMatrix, ToeplitzOperator, as_bit_vector
from ..exceptions import DimensionError, InstanceTooLargeError

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_CAP = 26


def as_assignment(values: Sequence[int], k: Optional[int] = None) -> np.ndarray:
    """转换为 uint8 赋值向量并检查长度"""
    assignment = as_bit_vector(values)
    if k is not None and assignment.shape[0] != k:
        raise DimensionError(f"assignment length {assignment.shape[0]} does not match {k} variables")
    return assignment


def lex_key(mask: int, k: int) -> int:
    """把 bit i = γ(i) 的整数转换为以 γ(0) 为最高位的字典序键"""
    return int(format(mask, f"0{k}b")[::-1], 2)


def mask_to_assignment(mask: int, k: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(k)], dtype=np.uint8)


class AffineSystem:
    """仿射 MAX-SAT 实例"""

    def __init__(self, coefficients, rhs=None):
        matrix = np.array(coefficients, dtype=np.int64, copy=True)
        if matrix.ndim != 2:
            raise DimensionError("coefficient rows must form a two-dimensional array")
        m, k = matrix.shape
        if m < 1 or k < 1:
            raise DimensionError(f"affine system needs m >= 1 and k >= 1, got {m}x{k}")
        if np.any((matrix != 0) & (matrix != 1)):
            raise DimensionError("coefficients must be 0 or 1")
        if rhs is None:
            rhs_vector = np.zeros(m, dtype=np.uint8)
        else:
            rhs_vector = as_bit_vector(rhs)
        if rhs_vector.shape[0] != m:
            raise DimensionError(f"rhs length {rhs_vector.shape[0]} does not match {m} constraints")
        self._coefficients = matrix.astype(np.uint8)
        self._coefficients.flags.writeable = False
        self._rhs = rhs_vector.copy()
        self._rhs.flags.writeable = False

    # 构造方法
    @classmethod
    def from_constraints(cls, k: int, constraints: Sequence[Tuple[Sequence[int], int]]) -> "AffineSystem":
        """由 (变量下标集合, 右端项) 列表构造"""
        coefficients = np.zeros((len(constraints), k), dtype=np.uint8)
        rhs = np.zeros(len(constraints), dtype=np.uint8)
        for row, (support, b) in enumerate(constraints):
            for j in support:
                if not 0 <= j < k:
                    raise DimensionError(f"variable index {j} outside 0..{k - 1}")
                coefficients[row, j] ^= 1
            rhs[row] = b
        return cls(coefficients, rhs)

    @classmethod
    def from_toeplitz(cls, operator: ToeplitzOperator) -> "AffineSystem":
        """M_{P,t}·x = 0：每行一个齐次约束"""
        return cls(operator.to_dense(), None)

    @classmethod
    def from_matrix(cls, matrix: BinaryMatrix, rhs=None) -> "AffineSystem":
        """由 0/1 矩阵 A 构造 A·x = rhs（默认齐次）"""
        return cls(matrix.to_numpy(), rhs)

    # 基本属性
    @property
    def m(self) -> int:
        return self._coefficients.shape[0]

    @property
    def k(self) -> int:
        return self._coefficients.shape[1]

    @property
    def coefficients(self) -> np.ndarray:
        return self._coefficients

    @property
    def rhs(self) -> np.ndarray:
        return self._rhs

    def is_homogeneous(self) -> bool:
        return not bool(self._rhs.any())

    def constraint(self, i: int) -> Tuple[List[int], int]:
        """第 i 个约束的 (变量下标, 右端项)"""
        return [int(j) for j in np.flatnonzero(self._coefficients[i])], int(self._rhs[i])

    def column_masks(self) -> List[int]:
        """每个变量出现在哪些约束中，以整数位集表示（第 i 位为第 i 个约束）"""
        masks = []
        for j in range(self.k):
            mask = 0
            for i in np.flatnonzero(self._coefficients[:, j]):
                mask |= 1 << int(i)
            masks.append(mask)
        return masks

    def rhs_mask(self) -> int:
        mask = 0
        for i in np.flatnonzero(self._rhs):
            mask |= 1 << int(i)
        return mask

    # 评价
    def violation_vector(self, assignment: Sequence[int]) -> np.ndarray:
        """每个约束是否被违反（1 表示违反）"""
        gamma = as_assignment(assignment, self.k)
        parity = (self._coefficients.astype(np.int64) @ gamma.astype(np.int64)) & 1
        return (parity.astype(np.uint8) ^ self._rhs).astype(np.uint8)

    def violation_count(self, assignment: Sequence[int]) -> int:
        return int(self.violation_vector(assignment).sum())

    def satisfied_count(self, assignment: Sequence[int]) -> int:
        return self.m - self.violation_count(assignment)

    # 变换
    def pin(self, variable: int, value: int) -> "AffineSystem":
        """把变量固定为 value 并代入消去，返回 k-1 个变量的系统"""
        if self.k < 2:
            raise DimensionError("cannot pin the only variable of a system")
        if not 0 <= variable < self.k:
            raise DimensionError(f"variable index {variable} outside 0..{self.k - 1}")
        column = self._coefficients[:, variable]
        rhs = self._rhs ^ (column & (value & 1))
        remaining = np.delete(self._coefficients, variable, axis=1)
        return AffineSystem(remaining, rhs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineSystem):
            return NotImplemented
        return (np.array_equal(self._coefficients, other._coefficients)
                and np.array_equal(self._rhs, other._rhs))

    def __repr__(self) -> str:
        kind = "homogeneous" if self.is_homogeneous() else "inhomogeneous"
        return f"AffineSystem({self.m}x{self.k}, {kind})"


def satisfied_count(system: AffineSystem, assignment: Sequence[int]) -> int:
    return system.satisfied_count(assignment)


def violation_count(system: AffineSystem, assignment: Sequence[int]) -> int:
    return system.violation_count(assignment)


def from_toeplitz(operator: ToeplitzOperator) -> AffineSystem:
    return AffineSystem.from_toeplitz(operator)


def exhaustive_solve(system: AffineSystem, forbid_zero: bool = False,
                     cap: int = DEFAULT_EXHAUSTIVE_CAP) -> Tuple[np.ndarray, int]:
    """
    穷举所有 2^k 个赋值求最大满足数

    按 Gray 码顺序枚举，每步只异或一列；平局取字典序最小的赋值（γ(0) 为最高位）

    Returns:
        Tuple[np.ndarray, int]: (最优赋值, 满足的约束数)
    """
    k = system.k
    if k > cap:
        raise InstanceTooLargeError(k, cap)
    columns = system.column_masks()
    rhs = system.rhs_mask()

    best_mask = None
    best_violations = system.m + 1
    best_key = 0
    if not forbid_zero:
        best_mask, best_violations, best_key = 0, popcount(rhs), 0

    mask = 0
    parity = 0
    for i in range(1, 1 << k):
        bit = (i & -i).bit_length() - 1
        mask ^= 1 << bit
        parity ^= columns[bit]
        violations = popcount(parity ^ rhs)
        if violations > best_violations:
            continue
        key = lex_key(mask, k)
        if violations < best_violations or key < best_key:
            best_mask, best_violations, best_key = mask, violations, key

    logger.debug("穷举完成: k=%d, 最少违反 %d 个约束", k, best_violations)
    return mask_to_assignment(best_mask, k), system.m - best_violations
