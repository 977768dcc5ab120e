# -*- coding: utf-8 -*-
"""
局部搜索模块
在仿射系统的赋值空间上做爬山法和模拟退火，目标是最小化违反约束数
邻域为汉明距离1的翻转，翻转代价由每个约束的奇偶缓存增量计算
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ConfigError, SolverInfeasibleError
from .affine_system import AffineSystem, as_assignment, exhaustive_solve
from .solver_config import HC_STEEPEST, SA_RETURN_FINAL, SolverConfig

logger = logging.getLogger(__name__)

ENGINE_EXHAUSTIVE = "exhaustive"
ENGINE_HILL_CLIMB = "hill_climb"
ENGINE_SIMULATED_ANNEAL = "simulated_anneal"
ENGINE_ALIASES = {
    "exhaustive": ENGINE_EXHAUSTIVE,
    "hc": ENGINE_HILL_CLIMB,
    "hill_climb": ENGINE_HILL_CLIMB,
    "sa": ENGINE_SIMULATED_ANNEAL,
    "simulated_anneal": ENGINE_SIMULATED_ANNEAL,
}


def normalize_engine(name: str) -> str:
    try:
        return ENGINE_ALIASES[name]
    except KeyError:
        raise ConfigError(f"unknown engine {name!r}") from None


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 生成器，保证跨平台可复现"""
    return np.random.Generator(np.random.PCG64(seed))


def random_nonzero_assignment(k: int, rng: np.random.Generator) -> np.ndarray:
    """均匀随机的非零赋值"""
    while True:
        assignment = rng.integers(0, 2, size=k, dtype=np.uint8)
        if assignment.any():
            return assignment


def neighbours(assignment: Sequence[int], forbid_zero: bool = False) -> List[np.ndarray]:
    """所有汉明距离为1的赋值；forbid_zero 时排除全零赋值"""
    gamma = as_assignment(assignment)
    result = []
    for j in range(gamma.shape[0]):
        neighbour = gamma.copy()
        neighbour[j] ^= 1
        if forbid_zero and not neighbour.any():
            continue
        result.append(neighbour)
    return result


class LocalSearchState:
    """当前赋值及其违反向量的增量缓存"""

    def __init__(self, system: AffineSystem, assignment: Sequence[int]):
        self.system = system
        self.assignment = as_assignment(assignment, system.k).copy()
        self._matrix = system.coefficients.astype(np.int64)
        self._column_rows = [np.flatnonzero(system.coefficients[:, j]) for j in range(system.k)]
        self.violated = system.violation_vector(self.assignment).astype(np.int64)
        self.fitness = int(self.violated.sum())
        self.ones = int(self.assignment.sum())

    def delta(self, j: int) -> int:
        """翻转变量 j 后违反数的变化"""
        rows = self._column_rows[j]
        return int(rows.shape[0] - 2 * self.violated[rows].sum())

    def deltas(self) -> np.ndarray:
        """所有变量的翻转增量"""
        return self._matrix.T @ (1 - 2 * self.violated)

    def flip(self, j: int) -> None:
        rows = self._column_rows[j]
        self.fitness += self.delta(j)
        self.violated[rows] ^= 1
        self.ones += -1 if self.assignment[j] else 1
        self.assignment[j] ^= 1

    def allowed_flips(self, forbid_zero: bool) -> np.ndarray:
        flips = np.arange(self.system.k)
        if forbid_zero and self.ones == 1:
            flips = flips[self.assignment == 0]
        return flips

    def snapshot(self) -> np.ndarray:
        return self.assignment.copy()


class SolverResult:
    """一次求解的结果与统计"""

    def __init__(self, engine: str, assignment: np.ndarray, violations: int, m: int,
                 iterations: int = 0, restarts: int = 0, worsening_moves: int = 0):
        self.engine = engine
        self.assignment = assignment
        self.violations = violations
        self.satisfied = m - violations
        self.iterations = iterations
        self.restarts = restarts
        self.worsening_moves = worsening_moves

    def to_dict(self) -> Dict[str, Any]:
        return {
            "engine": self.engine,
            "assignment": "".join(str(int(b)) for b in self.assignment),
            "violations": self.violations,
            "satisfied": self.satisfied,
            "iterations": self.iterations,
            "restarts": self.restarts,
            "worsening_moves": self.worsening_moves,
        }

    def __repr__(self) -> str:
        return f"SolverResult({self.engine}, violations={self.violations}, iterations={self.iterations})"


def _check_start(system: AffineSystem, start: Sequence[int], config: SolverConfig) -> np.ndarray:
    config.ensure_valid()
    gamma = as_assignment(start, system.k)
    if config.forbid_zero and not gamma.any():
        raise SolverInfeasibleError("zero start assignment while forbid-zero is set")
    return gamma


def _scan(state: LocalSearchState, forbid_zero: bool) -> Tuple[np.ndarray, np.ndarray]:
    flips = state.allowed_flips(forbid_zero)
    if flips.shape[0] == 0:
        raise SolverInfeasibleError("empty neighbourhood")
    return flips, state.deltas()[flips]


def _climb_steepest(state: LocalSearchState, config: SolverConfig) -> int:
    """每步取第一个最优的严格改进邻居，没有严格改进时停止"""
    iterations = 0
    while iterations < config.max_iters:
        flips, gains = _scan(state, config.forbid_zero)
        best = gains.min()
        if best >= 0:
            break
        state.flip(int(flips[np.argmax(gains == best)]))
        iterations += 1
    return iterations


def _climb_stochastic(state: LocalSearchState, config: SolverConfig,
                      rng: np.random.Generator) -> int:
    """
    在最优邻居中随机取一个，不变差就移动（包括等值移动）；
    当前解不劣于所有邻居时停止
    """
    iterations = 0
    flips, gains = _scan(state, config.forbid_zero)
    while iterations < config.max_iters:
        best = gains.min()
        if best > 0:
            break
        candidates = flips[gains == best]
        state.flip(int(candidates[rng.integers(candidates.shape[0])]))
        iterations += 1
        flips = state.allowed_flips(config.forbid_zero)
        if flips.shape[0] == 0:
            break
        gains = state.deltas()[flips]
        if gains.min() >= 0:
            break
    return iterations


def _climb(state: LocalSearchState, config: SolverConfig, rng: np.random.Generator) -> int:
    if config.hc_variant == HC_STEEPEST:
        return _climb_steepest(state, config)
    return _climb_stochastic(state, config, rng)


def _anneal(state: LocalSearchState, config: SolverConfig, rng: np.random.Generator):
    temperature = config.t_initial
    best_assignment = state.snapshot()
    best_fitness = state.fitness
    steps = 0
    worsening = 0
    while temperature > config.t_min and steps < config.max_iters:
        flips = state.allowed_flips(config.forbid_zero)
        if flips.shape[0] == 0:
            raise SolverInfeasibleError("empty neighbourhood")
        j = int(flips[rng.integers(flips.shape[0])])
        change = state.delta(j)
        if change <= 0:
            state.flip(j)
        elif rng.random() < math.exp(-change / temperature):
            state.flip(j)
            worsening += 1
        if state.fitness < best_fitness:
            best_fitness = state.fitness
            best_assignment = state.snapshot()
        temperature *= config.alpha
        steps += 1
    if config.sa_return == SA_RETURN_FINAL:
        return state.snapshot(), state.fitness, steps, worsening
    return best_assignment, best_fitness, steps, worsening


def _restart_starts(system: AffineSystem, config: SolverConfig, rng: np.random.Generator):
    for _ in range(config.restarts):
        yield random_nonzero_assignment(system.k, rng)


def hill_climb_run(system: AffineSystem, start: Sequence[int], config: SolverConfig) -> SolverResult:
    """爬山法，返回带统计的结果"""
    gamma = _check_start(system, start, config)
    rng = make_rng(config.seed)
    state = LocalSearchState(system, gamma)
    iterations = _climb(state, config, rng)
    best_assignment, best_fitness = state.snapshot(), state.fitness
    for start_r in _restart_starts(system, config, rng):
        state = LocalSearchState(system, start_r)
        iterations += _climb(state, config, rng)
        if state.fitness < best_fitness:
            best_assignment, best_fitness = state.snapshot(), state.fitness
    logger.debug("爬山法完成: %d 次迭代, 违反 %d 个约束", iterations, best_fitness)
    return SolverResult(ENGINE_HILL_CLIMB, best_assignment, best_fitness, system.m,
                        iterations=iterations, restarts=config.restarts)


def simulated_anneal_run(system: AffineSystem, start: Sequence[int], config: SolverConfig) -> SolverResult:
    """模拟退火，返回带统计的结果"""
    gamma = _check_start(system, start, config)
    rng = make_rng(config.seed)
    state = LocalSearchState(system, gamma)
    best_assignment, best_fitness, steps, worsening = _anneal(state, config, rng)
    for start_r in _restart_starts(system, config, rng):
        state = LocalSearchState(system, start_r)
        candidate, fitness, more_steps, more_worsening = _anneal(state, config, rng)
        steps += more_steps
        worsening += more_worsening
        if fitness < best_fitness:
            best_assignment, best_fitness = candidate, fitness
    logger.debug("模拟退火完成: %d 步, 接受 %d 次变差移动, 违反 %d 个约束", steps, worsening, best_fitness)
    return SolverResult(ENGINE_SIMULATED_ANNEAL, best_assignment, best_fitness, system.m,
                        iterations=steps, restarts=config.restarts, worsening_moves=worsening)


def hill_climb(system: AffineSystem, start: Sequence[int], config: SolverConfig) -> np.ndarray:
    return hill_climb_run(system, start, config).assignment


def simulated_anneal(system: AffineSystem, start: Sequence[int], config: SolverConfig) -> np.ndarray:
    return simulated_anneal_run(system, start, config).assignment


def run_solver(system: AffineSystem, engine: str, config: SolverConfig,
               start: Optional[Sequence[int]] = None) -> SolverResult:
    """
    按引擎名求解

    Args:
        system: 仿射系统
        engine: exhaustive / hill_climb(hc) / simulated_anneal(sa)
        config: 求解器设置
        start: 局部搜索起点，None 时由种子生成随机起点

    Returns:
        SolverResult: 求解结果
    """
    engine = normalize_engine(engine)
    if engine == ENGINE_EXHAUSTIVE:
        assignment, satisfied = exhaustive_solve(system, config.forbid_zero, config.exhaustive_cap)
        return SolverResult(engine, assignment, system.m - satisfied, system.m)
    if start is None:
        rng = make_rng(config.seed)
        if config.forbid_zero:
            start = random_nonzero_assignment(system.k, rng)
        else:
            start = rng.integers(0, 2, size=system.k, dtype=np.uint8)
    if engine == ENGINE_HILL_CLIMB:
        return hill_climb_run(system, start, config)
    return simulated_anneal_run(system, start, config)
