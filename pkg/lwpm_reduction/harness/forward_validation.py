# -*- coding: utf-8 -*-
"""
正向归约批量验证
对随机 (P, n) 检查：提升后多项式的重量等于违反约束数；
穷举最优值与多项式暴力求解一致；固定 x_0 = 1 不改变最优值
"""

import logging
from typing import Any, Dict, Optional

import numpy as np
from tqdm import tqdm

from ..algebra.gf2poly import Gf2Poly
from ..data.text_formats import Counterexample
from ..exceptions import IdentityViolation
from ..reduction.min_pm import MinPmInstance, forward_reduce, lift_solution, solve_min_pm
from ..reduction.oracle import brute_min_pm
from ..sat.affine_system import exhaustive_solve
from ..sat.metaheuristics import make_rng, random_nonzero_assignment
from ..sat.solver_config import SolverConfig
from .instance_generator import InstanceGenerator

logger = logging.getLogger(__name__)

KIND_MEASURE = "measure-identity"
KIND_OPTIMUM = "optimum-identity"
KIND_PIN = "pin-soundness"


class ForwardValidationReport:
    """验证结果计数"""

    def __init__(self, count: int, max_degree: int, max_t: int, seed: int):
        self.count = count
        self.max_degree = max_degree
        self.max_t = max_t
        self.seed = seed
        self.passed = 0
        self.measure_checks = 0
        self.optimum_checks = 0

    @property
    def failed(self) -> int:
        return self.count - self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "max_degree": self.max_degree,
            "max_t": self.max_t,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "measure_checks": self.measure_checks,
            "optimum_checks": self.optimum_checks,
        }

    def to_text(self) -> str:
        return "\n".join(f"{key} {value}" for key, value in self.to_dict().items()) + "\n"


def _fail(kind: str, instance: MinPmInstance, expected: int, actual: int, assignment=None):
    counterexample = Counterexample(kind, instance, expected, actual, assignment)
    raise IdentityViolation(f"{kind} violated for {instance}", counterexample)


def check_instance(instance: MinPmInstance, rng: np.random.Generator, samples: int = 4,
                   config: Optional[SolverConfig] = None) -> int:
    """检查一个实例的三条恒等式，返回做过的测度检查数"""
    config = config or SolverConfig()
    certificate = forward_reduce(instance, pin=False)
    system = certificate.system

    for _ in range(samples):
        gamma = random_nonzero_assignment(system.k, rng)
        weight = lift_solution(instance, gamma).weight
        violations = system.violation_count(gamma)
        if weight != violations:
            _fail(KIND_MEASURE, instance, violations, weight, gamma)

    _, oracle_weight = brute_min_pm(instance.poly, instance.n, config.exhaustive_cap)
    _, satisfied = exhaustive_solve(system, forbid_zero=True, cap=config.exhaustive_cap)
    unpinned_minimum = system.m - satisfied
    if unpinned_minimum != oracle_weight:
        _fail(KIND_OPTIMUM, instance, oracle_weight, unpinned_minimum)

    _, pinned_weight = solve_min_pm(instance, "exhaustive", config)
    if pinned_weight != unpinned_minimum:
        _fail(KIND_PIN, instance, unpinned_minimum, pinned_weight)
    return samples


def run_forward_validation(count: int = 100, max_degree: int = 10, seed: int = 0,
                           max_t: int = 11, samples: int = 4,
                           progress: bool = False) -> ForwardValidationReport:
    """
    批量验证正向归约

    Args:
        count: 实例个数，第一个实例固定为 P = 1
        max_degree: P 的最高次数
        seed: 随机种子
        max_t: t = n - d - 1 的上限，须使 t+1 不超过穷举上限
        samples: 每个实例检查的随机赋值个数
        progress: 是否显示进度条

    Returns:
        ForwardValidationReport: 计数结果；任何违反都会抛出 IdentityViolation
    """
    rng = make_rng(seed)
    report = ForwardValidationReport(count, max_degree, max_t, seed)
    for index in tqdm(range(count), desc="forward validation", disable=not progress):
        if index == 0:
            instance = MinPmInstance(Gf2Poly.one(), int(rng.integers(1, max_t + 2)))
        else:
            instance = InstanceGenerator.gen_min_pm_instance(max_degree, max_t, rng)
        report.measure_checks += check_instance(instance, rng, samples)
        report.optimum_checks += 1
        report.passed += 1
    logger.info("正向验证完成: %d/%d 通过", report.passed, count)
    return report
