# -*- coding: utf-8 -*-
"""
暴力求解器
与归约、求解器不共享计算代码：乘法、约束判定都在本模块内重新写一遍，用于交叉验证
"""

import itertools
from typing import Sequence, Tuple

import numpy as np

from ..algebra.gf2poly import Gf2Poly
from ..exceptions import DimensionError, InstanceTooLargeError
from ..sat.affine_system import DEFAULT_EXHAUSTIVE_CAP, AffineSystem


def _multiply(p_bits: int, q_bits: int) -> int:
    product = 0
    shift = 0
    while q_bits:
        if q_bits & 1:
            product ^= p_bits << shift
        q_bits >>= 1
        shift += 1
    return product


def brute_min_pm(poly: Gf2Poly, n: int, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> Tuple[Gf2Poly, int]:
    """
    枚举所有非零 Q（deg Q <= n-d-1），返回重量最小的 P·Q

    平局取 Q 作为整数（第 i 位为 q_i）最小者

    Returns:
        Tuple[Gf2Poly, int]: (K, 重量)
    """
    if poly.is_zero():
        raise DimensionError("MIN-PM needs a non-zero polynomial P")
    if n <= poly.degree:
        raise DimensionError(f"n={n} must exceed deg(P)={poly.degree}")
    free = n - poly.degree
    if free > cap:
        raise InstanceTooLargeError(free, cap)

    p_bits = poly.bits
    best_bits = 0
    best_weight = n + 1
    for q_bits in range(1, 1 << free):
        product = _multiply(p_bits, q_bits)
        product_weight = bin(product).count("1")
        if product_weight < best_weight:
            best_bits, best_weight = product, product_weight
    return Gf2Poly(best_bits), best_weight


def _violated(rows: Sequence[Tuple[Tuple[int, ...], int]], assignment: Tuple[int, ...]) -> int:
    count = 0
    for support, b in rows:
        parity = 0
        for j in support:
            parity ^= assignment[j]
        if parity != b:
            count += 1
    return count


def brute_maxsat(system: AffineSystem, forbid_zero: bool = False,
                 cap: int = DEFAULT_EXHAUSTIVE_CAP) -> Tuple[np.ndarray, int]:
    """
    按字典序（γ(0) 为最高位）枚举全部赋值，返回满足数最多的第一个

    Returns:
        Tuple[np.ndarray, int]: (赋值, 满足的约束数)
    """
    k = system.k
    if k > cap:
        raise InstanceTooLargeError(k, cap)
    rows = []
    for i in range(system.m):
        support, b = system.constraint(i)
        rows.append((tuple(support), b))

    best = None
    best_violated = system.m + 1
    for assignment in itertools.product((0, 1), repeat=k):
        if forbid_zero and not any(assignment):
            continue
        violated = _violated(rows, assignment)
        if violated < best_violated:
            best, best_violated = assignment, violated
    if best is None:
        raise DimensionError("no admissible assignment")
    return np.array(best, dtype=np.uint8), system.m - best_violated
