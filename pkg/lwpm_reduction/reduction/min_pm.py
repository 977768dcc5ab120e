# -*- coding: utf-8 -*-
"""
MIN-PM 归约模块
正向：(P, n) -> 齐次系统 M_{P,t}·x = 0，解 γ 提升为 K = P·Q_γ，重量等于违反约束数
反向：0/1 矩阵 A -> Toeplitz 形式 -> MIN-PM 实例；由倍式 P·Q 出发为 A 构造赋值
"""

import logging
import math
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..algebra.gf2poly import Gf2Poly, exact_div
from ..algebra.toeplitz import POLICY_MAJORITY, BinaryMatrix, build, project_toeplitz
from ..exceptions import ConfigError, DimensionError, InstanceTooLargeError, ZeroMultipleError
from ..sat.affine_system import AffineSystem, as_assignment
from ..sat.metaheuristics import (ENGINE_EXHAUSTIVE, ENGINE_HILL_CLIMB, normalize_engine,
                                  run_solver)
from ..sat.solver_config import SolverConfig

logger = logging.getLogger(__name__)

LIFT_TRUNCATE = "truncate"
LIFT_DROP_FIRST = "drop-first"
LIFT_POLICIES = (LIFT_TRUNCATE, LIFT_DROP_FIRST)

RATIO_GAMMA_OVER_PQ = "gamma/pq"
RATIO_PQ_OVER_GAMMA = "pq/gamma"
RATIO_ORIENTATIONS = (RATIO_GAMMA_OVER_PQ, RATIO_PQ_OVER_GAMMA)


class MinPmInstance:
    """MIN-PM(F_2) 实例 (P, n)"""

    def __init__(self, poly: Gf2Poly, n: int):
        if poly.is_zero():
            raise DimensionError("MIN-PM needs a non-zero polynomial P")
        if n < 1:
            raise DimensionError("n must be a positive integer")
        if n <= poly.degree:
            raise DimensionError(f"n={n} must exceed deg(P)={poly.degree}")
        self.poly = poly
        self.n = n

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def t(self) -> int:
        """Q 的最高次数 t = n - d - 1"""
        return self.n - self.degree - 1

    @property
    def toeplitz_shape(self) -> Tuple[int, int]:
        return self.degree + self.t + 1, self.t + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, MinPmInstance):
            return NotImplemented
        return self.poly == other.poly and self.n == other.n

    def __repr__(self) -> str:
        return f"MinPmInstance(P={self.poly}, n={self.n})"


def instance_size(instance: MinPmInstance) -> int:
    """二进制表示的长度 (d+1) + ceil(log2(n+1))"""
    return (instance.degree + 1) + instance.n.bit_length()


class ReductionCertificate:
    """正向归约的产物：齐次系统、固定的变量以及维度信息"""

    def __init__(self, instance: MinPmInstance, system: AffineSystem,
                 pin: Optional[Tuple[int, int]] = None):
        self.instance = instance
        self.system = system
        self.pin = pin
        self.pinned_system = system.pin(*pin) if pin is not None else None

    @property
    def d(self) -> int:
        return self.instance.degree

    @property
    def t(self) -> int:
        return self.instance.t

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def solve_system(self) -> AffineSystem:
        """实际交给求解器的系统"""
        return self.pinned_system if self.pinned_system is not None else self.system

    def restore(self, assignment: Sequence[int]) -> np.ndarray:
        """把固定的变量插回，得到长度 t+1 的赋值"""
        gamma = as_assignment(assignment)
        if self.pin is None:
            return as_assignment(gamma, self.t + 1)
        variable, value = self.pin
        if gamma.shape[0] != self.t:
            raise DimensionError(f"pinned assignment must have {self.t} bits, got {gamma.shape[0]}")
        return np.insert(gamma, variable, value).astype(np.uint8)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "t": self.t,
            "n": self.n,
            "rows": self.system.m,
            "cols": self.system.k,
            "pin": None if self.pin is None else {"variable": self.pin[0], "value": self.pin[1]},
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReductionCertificate):
            return NotImplemented
        return (self.instance == other.instance and self.system == other.system
                and self.pin == other.pin)

    def __repr__(self) -> str:
        return f"ReductionCertificate({self.system.m}x{self.system.k}, pin={self.pin})"


def forward_reduce(instance: MinPmInstance, pin: bool = True) -> ReductionCertificate:
    """
    正向 S-归约 f((P, n))

    Args:
        instance: MIN-PM 实例
        pin: 是否固定 x_0 = 1（t = 0 时只有一个变量，不做固定）

    Returns:
        ReductionCertificate: 归约证书
    """
    operator = build(instance.poly, instance.t)
    system = AffineSystem.from_toeplitz(operator)
    applied = (0, 1) if pin and instance.t > 0 else None
    certificate = ReductionCertificate(instance, system, applied)
    logger.debug("正向归约: P=%s, n=%d -> %dx%d 系统, 固定=%s",
                 instance.poly, instance.n, system.m, system.k, applied)
    return certificate


def lift_solution(instance: MinPmInstance, assignment: Sequence[int]) -> Gf2Poly:
    """g((P,n), γ) = P·Q_γ"""
    gamma = as_assignment(assignment, instance.t + 1)
    if not gamma.any():
        raise ZeroMultipleError()
    return instance.poly * Gf2Poly.from_bits(gamma)


def normalize_multiple(multiple: Gf2Poly) -> Gf2Poly:
    """除去 x 的最高次幂，使常数项为1；重量不变"""
    if multiple.is_zero():
        raise ZeroMultipleError()
    return multiple.shift(-multiple.valuation())


class MinPmSolution:
    """MIN-PM 求解结果"""

    def __init__(self, multiple: Gf2Poly, assignment: np.ndarray, engine: str,
                 exact: bool, solver_result=None):
        self.multiple = multiple
        self.weight = multiple.weight
        self.assignment = assignment
        self.engine = engine
        self.exact = exact
        self.solver_result = solver_result

    def __repr__(self) -> str:
        return f"MinPmSolution(K={self.multiple}, weight={self.weight}, engine={self.engine})"


def solve_min_pm_run(instance: MinPmInstance, engine: str = ENGINE_EXHAUSTIVE,
                     config: Optional[SolverConfig] = None) -> MinPmSolution:
    """Toeplitz 矩阵 -> 仿射 MAX-SAT -> 求解 -> 返回 P·Q"""
    config = (config or SolverConfig()).ensure_valid()
    engine = normalize_engine(engine)
    if engine == ENGINE_EXHAUSTIVE and instance.t + 1 > config.exhaustive_cap:
        raise InstanceTooLargeError(instance.t + 1, config.exhaustive_cap)

    certificate = forward_reduce(instance, pin=True)
    if certificate.pinned_system is None:
        # t = 0：唯一的非零解是 Q = 1
        gamma = np.ones(1, dtype=np.uint8)
        multiple = lift_solution(instance, gamma)
        return MinPmSolution(multiple, gamma, engine, exact=True)

    # 固定后的零赋值对应 Q = 1，即 K = P
    start = np.zeros(certificate.t, dtype=np.uint8)
    result = run_solver(certificate.pinned_system, engine, config.copy(forbid_zero=False), start)
    gamma = certificate.restore(result.assignment)
    multiple = lift_solution(instance, gamma)
    logger.info("求解完成(%s): 重量 %d", engine, multiple.weight)
    return MinPmSolution(multiple, gamma, engine, exact=(engine == ENGINE_EXHAUSTIVE),
                         solver_result=result)


def solve_min_pm(instance: MinPmInstance, engine: str = ENGINE_EXHAUSTIVE,
                 config: Optional[SolverConfig] = None) -> Tuple[Gf2Poly, int]:
    solution = solve_min_pm_run(instance, engine, config)
    return solution.multiple, solution.weight


def bound_min_pm(instance: MinPmInstance, config: Optional[SolverConfig] = None) -> Tuple[int, bool]:
    """
    μ* 的值或上界

    Returns:
        Tuple[int, bool]: (重量, 是否精确)；超出穷举上限时用爬山法给出上界
    """
    config = config or SolverConfig()
    if instance.t + 1 <= config.exhaustive_cap:
        return solve_min_pm_run(instance, ENGINE_EXHAUSTIVE, config).weight, True
    logger.warning("实例超出穷举上限 (%d > %d)，结果为上界", instance.t + 1, config.exhaustive_cap)
    return solve_min_pm_run(instance, ENGINE_HILL_CLIMB, config).weight, False


def evaluate_min_pm(instance: MinPmInstance, exact: bool = True,
                    config: Optional[SolverConfig] = None) -> int:
    """求 μ*(P, n)；exact=False 时允许返回上界"""
    config = config or SolverConfig()
    if exact:
        return solve_min_pm_run(instance, ENGINE_EXHAUSTIVE, config).weight
    return bound_min_pm(instance, config)[0]


def decide_min_pm_run(instance: MinPmInstance, w: int, exact: bool = True,
                      config: Optional[SolverConfig] = None) -> Tuple[bool, bool]:
    """
    判定是否存在次数小于 n、重量不超过 w 的非零倍式

    Returns:
        Tuple[bool, bool]: (答案, 是否确定)；上界模式下找到的倍式重量不超过 w 时
        答案确定为 true，上界大于 w 时的 false 未经确认
    """
    if w < 1:
        raise DimensionError("weight bound w must be positive")
    config = config or SolverConfig()
    if exact:
        return evaluate_min_pm(instance, True, config) <= w, True
    weight, weight_exact = bound_min_pm(instance, config)
    answer = weight <= w
    return answer, weight_exact or answer


def decide_min_pm(instance: MinPmInstance, w: int, exact: bool = True,
                  config: Optional[SolverConfig] = None) -> bool:
    """同 decide_min_pm_run；上界模式下无法确认的 false 抛出 InstanceTooLargeError"""
    config = config or SolverConfig()
    answer, settled = decide_min_pm_run(instance, w, exact, config)
    if not settled:
        raise InstanceTooLargeError(instance.t + 1, config.exhaustive_cap)
    return answer


def reverse_reduce(matrix: BinaryMatrix, policy: str = POLICY_MAJORITY,
                   tie_value: int = 1) -> MinPmInstance:
    """A -> A_T -> (P, n)，n = m + k + 1"""
    poly, t = project_toeplitz(matrix, policy, tie_value)
    return MinPmInstance(poly, poly.degree + t + 1)


def initial_lift_assignment(quotient: Gf2Poly, k: int, policy: str = LIFT_TRUNCATE) -> np.ndarray:
    """由 Q 的系数截取 k 位作为局部搜索起点"""
    if policy not in LIFT_POLICIES:
        raise ConfigError(f"unknown lift policy {policy!r}")
    length = max(k + 1, (quotient.degree or 0) + 1)
    coefficients = quotient.to_bits(length)
    if policy == LIFT_TRUNCATE:
        return coefficients[:k].copy()
    return coefficients[1:k + 1].copy()


class ReverseLiftResult:
    """反向提升的结果：A 上的赋值及其范数与 P·Q 重量的比值"""

    def __init__(self, assignment: np.ndarray, start_violations: int, violations: int,
                 weight_pq: int, method: str, solver_result=None):
        self.assignment = assignment
        self.start_violations = start_violations
        self.violations = violations
        self.weight_pq = weight_pq
        self.method = method
        self.solver_result = solver_result

    def ratio(self, orientation: str = RATIO_GAMMA_OVER_PQ) -> float:
        """γ 的范数 / P·Q 的重量，或其倒数"""
        if orientation == RATIO_GAMMA_OVER_PQ:
            numerator, denominator = self.violations, self.weight_pq
        elif orientation == RATIO_PQ_OVER_GAMMA:
            numerator, denominator = self.weight_pq, self.violations
        else:
            raise ConfigError(f"unknown ratio orientation {orientation!r}")
        if denominator == 0:
            return math.inf
        return numerator / denominator

    def __repr__(self) -> str:
        return (f"ReverseLiftResult({self.method}, norm={self.violations}, "
                f"weight_pq={self.weight_pq})")


def reverse_lift_run(matrix: BinaryMatrix, multiple: Gf2Poly, poly: Gf2Poly, method: str,
                     config: SolverConfig, lift_policy: str = LIFT_TRUNCATE,
                     rhs=None) -> ReverseLiftResult:
    """
    由倍式 K = P·Q 为 A 构造赋值

    Args:
        matrix: MAX-SAT 实例 A (m×k)
        multiple: K，必须是 P 的非零倍式
        poly: P
        method: hill_climb(hc) / simulated_anneal(sa)
        config: 求解器设置
        lift_policy: truncate 取 Q 的前 k 个系数；drop-first 取下标 1..k
        rhs: A·x = rhs 的右端项，None 为齐次

    Returns:
        ReverseLiftResult: 结果
    """
    if multiple.is_zero():
        raise ZeroMultipleError()
    method = normalize_engine(method)
    if method == ENGINE_EXHAUSTIVE:
        raise DimensionError("reverse lift refines with a local search method, not exhaustive search")
    quotient = exact_div(multiple, poly)
    k = matrix.cols
    start = initial_lift_assignment(quotient, k, lift_policy)
    if config.forbid_zero and not start.any():
        start[-1] = 1
    system = AffineSystem.from_matrix(matrix, rhs)
    start_violations = system.violation_count(start)
    result = run_solver(system, method, config, start)
    return ReverseLiftResult(result.assignment, start_violations, result.violations,
                             multiple.weight, method, result)


def reverse_lift(matrix: BinaryMatrix, multiple: Gf2Poly, poly: Gf2Poly, method: str,
                 config: SolverConfig, lift_policy: str = LIFT_TRUNCATE, rhs=None) -> np.ndarray:
    return reverse_lift_run(matrix, multiple, poly, method, config, lift_policy, rhs).assignment
