# -*- coding: utf-8 -*-
"""
Toeplitz 算子模块
M_{P,t} 只保存 P 的系数和列数，第 j 列为第一列下移 j 位
另提供 0/1 矩阵 BinaryMatrix 以及把任意矩阵投影为 Toeplitz 形式的方法
"""

import logging
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..exceptions import DimensionError
from .gf2poly import Gf2Poly

logger = logging.getLogger(__name__)

POLICY_MAJORITY = "majority"
POLICY_FIRST_OCCURRENCE = "first-occurrence"
PROJECTION_POLICIES = (POLICY_MAJORITY, POLICY_FIRST_OCCURRENCE)


def as_bit_vector(values: Iterable[int]) -> np.ndarray:
    """转换为 uint8 的 0/1 向量"""
    vector = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    vector = vector.astype(np.uint8).ravel()
    if np.any(vector > 1):
        raise DimensionError("bit vector entries must be 0 or 1")
    return vector


class ToeplitzOperator:
    """隐式的 (d+t+1)×(t+1) Toeplitz 矩阵"""

    def __init__(self, poly: Gf2Poly, cols: int):
        if poly.is_zero():
            raise DimensionError("Toeplitz operator of the zero polynomial is undefined")
        if cols < 1:
            raise DimensionError("Toeplitz operator needs at least one column")
        self.poly = poly
        self.cols = cols
        self._first_column = poly.to_bits(poly.degree + 1)
        self._first_column.flags.writeable = False

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def t(self) -> int:
        return self.cols - 1

    @property
    def rows(self) -> int:
        return self.degree + self.cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def coeffs(self) -> np.ndarray:
        """a_0..a_d"""
        return self._first_column

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        offset = i - j
        if 0 <= offset <= self.degree:
            return int(self._first_column[offset])
        return 0

    def column(self, j: int) -> np.ndarray:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} outside 0..{self.cols - 1}")
        column = np.zeros(self.rows, dtype=np.uint8)
        column[j:j + self.degree + 1] = self._first_column
        return column

    def row_support(self, i: int) -> np.ndarray:
        """第 i 行中取值为1的列下标"""
        low = max(0, i - self.degree)
        high = min(self.cols - 1, i)
        js = np.arange(low, high + 1)
        return js[self._first_column[i - js] == 1]

    def to_dense(self) -> np.ndarray:
        """显式矩阵，仅用于小规模算子"""
        dense = np.zeros(self.shape, dtype=np.uint8)
        for j in range(self.cols):
            dense[j:j + self.degree + 1, j] = self._first_column
        return dense

    def matvec(self, v: Sequence[int]) -> np.ndarray:
        """M_{P,t}·v over GF(2)，直接由系数逐列移位异或"""
        vector = as_bit_vector(v)
        if vector.shape[0] != self.cols:
            raise DimensionError(f"vector length {vector.shape[0]} does not match {self.cols} columns")
        out = np.zeros(self.rows, dtype=np.uint8)
        span = self.degree + 1
        for j in np.flatnonzero(vector):
            out[j:j + span] ^= self._first_column
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ToeplitzOperator):
            return NotImplemented
        return self.poly == other.poly and self.cols == other.cols

    def __repr__(self) -> str:
        return f"ToeplitzOperator(P={self.poly}, t={self.t}, shape={self.rows}x{self.cols})"


def build(poly: Gf2Poly, t: int) -> ToeplitzOperator:
    """构造 M_{P,t}"""
    if t < 0:
        raise DimensionError("t must be non-negative")
    return ToeplitzOperator(poly, t + 1)


def matvec(operator: ToeplitzOperator, v: Sequence[int]) -> np.ndarray:
    return operator.matvec(v)


class BinaryMatrix:
    """m×k 的 0/1 矩阵（不可变）"""

    def __init__(self, entries):
        array = np.array(entries, dtype=np.int64, copy=True)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise DimensionError("binary matrix must be non-empty and two-dimensional")
        if np.any((array != 0) & (array != 1)):
            raise DimensionError("binary matrix entries must be 0 or 1")
        self._entries = array.astype(np.uint8)
        self._entries.flags.writeable = False

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "BinaryMatrix":
        """由 '0101' 形式的行字符串构造"""
        return cls([[int(c) for c in row] for row in rows])

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._entries.shape

    def to_numpy(self) -> np.ndarray:
        return self._entries

    def __getitem__(self, index):
        return self._entries[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._entries, other._entries))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"


def project_toeplitz(matrix: BinaryMatrix, policy: str = POLICY_MAJORITY,
                     tie_value: int = 1) -> Tuple[Gf2Poly, int]:
    """
    把任意 0/1 矩阵投影为 Toeplitz 形式

    Args:
        matrix: m×k 矩阵
        policy: "majority" 按非负对角线多数表决；"first-occurrence" 取第一列 A(δ,0)
        tie_value: 多数表决平票时取的值

    Returns:
        Tuple[Gf2Poly, int]: (次数恰为 m 的 P, t=k)
    """
    if policy not in PROJECTION_POLICIES:
        raise ValueError(f"unknown projection policy {policy!r}")
    if tie_value not in (0, 1):
        raise ValueError("tie value must be 0 or 1")
    m, k = matrix.shape
    entries = matrix.to_numpy()
    coefficients = np.zeros(m + 1, dtype=np.uint8)
    if policy == POLICY_FIRST_OCCURRENCE:
        coefficients[:m] = entries[:, 0]
    else:
        for delta in range(m):
            # 负偏移给出 A[δ+j, j]，即 i-j=δ 的对角线
            diagonal = np.diagonal(entries, offset=-delta)
            ones = int(diagonal.sum())
            zeros = diagonal.shape[0] - ones
            if ones != zeros:
                coefficients[delta] = 1 if ones > zeros else 0
            else:
                coefficients[delta] = tie_value
    coefficients[m] = 1
    poly = Gf2Poly.from_bits(coefficients)
    logger.debug("投影完成: %dx%d -> deg(P)=%d, t=%d", m, k, poly.degree, k)
    return poly, k
