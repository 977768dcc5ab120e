# -*- coding: utf-8 -*-
"""
反向归约实验模块
对每个规模 m×k 重复：生成随机矩阵 A -> 投影为 MIN-PM 实例 -> 求倍式 P·Q ->
用爬山法和模拟退火为 A 构造赋值 -> 记录范数和比值
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..algebra.toeplitz import POLICY_MAJORITY, PROJECTION_POLICIES
from ..exceptions import ConfigError
from ..reduction.min_pm import (LIFT_POLICIES, LIFT_TRUNCATE, RATIO_GAMMA_OVER_PQ,
                                RATIO_ORIENTATIONS, RATIO_PQ_OVER_GAMMA, reverse_lift_run,
                                reverse_reduce, solve_min_pm_run)
from ..sat.metaheuristics import (ENGINE_HILL_CLIMB, ENGINE_SIMULATED_ANNEAL,
                                  normalize_engine)
from ..sat.solver_config import SolverConfig
from .instance_generator import RHS_HOMOGENEOUS, RHS_MODES, InstanceGenerator

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_FAILED = "failed"

SERIES_PQ = "pq"
SERIES_HC = "hc"
SERIES_SA = "sa"
SERIES_COLUMNS = {SERIES_PQ: "weight_pq", SERIES_HC: "norm_hc", SERIES_SA: "norm_sa"}

RATIO_COLUMNS = ("ratio_hc", "ratio_sa", "inverse_ratio_hc", "inverse_ratio_sa")

RECORD_COLUMNS = (
    "m", "k", "trial", "seed", "lwpm_rows", "lwpm_cols", "weight_p", "weight_pq",
    "start_norm", "norm_hc", "norm_sa", "ratio_hc", "ratio_sa",
    "inverse_ratio_hc", "inverse_ratio_sa", "status", "error",
)


def size_label(m: int, k: int) -> str:
    return f"{m}x{k}"


def parse_sizes(text: str) -> List[Tuple[int, int]]:
    """'40x30,400x200' -> [(40, 30), (400, 200)]"""
    sizes = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.lower().split("x")
        if len(parts) != 2:
            raise ConfigError(f"bad size {token!r}, expected MxK")
        try:
            m, k = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(f"bad size {token!r}, expected MxK") from None
        if m < 1 or k < 1:
            raise ConfigError(f"bad size {token!r}, dimensions must be positive")
        sizes.append((m, k))
    if not sizes:
        raise ConfigError("no sizes given")
    return sizes


class ExperimentConfig:
    """实验设置"""

    def __init__(self, sizes: Sequence[Tuple[int, int]] = ((40, 30),), trials: int = 50,
                 base_seed: int = 0, density: float = 0.5, rhs_mode: str = RHS_HOMOGENEOUS,
                 projection_policy: str = POLICY_MAJORITY, tie_value: int = 1,
                 lift_policy: str = LIFT_TRUNCATE, multiple_engine: str = ENGINE_HILL_CLIMB,
                 workers: int = 1, ratio_orientation: str = RATIO_GAMMA_OVER_PQ,
                 multiple_config: Optional[SolverConfig] = None,
                 hc_config: Optional[SolverConfig] = None,
                 sa_config: Optional[SolverConfig] = None):
        self.sizes = [(int(m), int(k)) for m, k in sizes]
        self.trials = trials
        self.base_seed = base_seed  # 第 i 次试验的种子为 base_seed + i
        self.density = density  # 随机矩阵中1的概率
        self.rhs_mode = rhs_mode  # homogeneous / random
        self.projection_policy = projection_policy
        self.tie_value = tie_value
        self.lift_policy = lift_policy
        self.multiple_engine = multiple_engine  # 求 P·Q 用的引擎
        self.workers = workers  # 并行进程数，1 为串行
        self.ratio_orientation = ratio_orientation
        self.multiple_config = multiple_config or SolverConfig()
        self.hc_config = hc_config or SolverConfig()
        self.sa_config = sa_config or SolverConfig()

    def validate_parameters(self) -> Tuple[bool, str]:
        """验证参数"""
        if not self.sizes:
            return False, "at least one size is required"
        if any(m < 1 or k < 1 for m, k in self.sizes):
            return False, "sizes must be positive"
        if self.trials < 1:
            return False, "trials must be at least 1"
        if not 0 < self.density <= 1:
            return False, "density must lie in (0, 1]"
        if self.rhs_mode not in RHS_MODES:
            return False, f"rhs mode must be one of {', '.join(RHS_MODES)}"
        if self.projection_policy not in PROJECTION_POLICIES:
            return False, f"projection policy must be one of {', '.join(PROJECTION_POLICIES)}"
        if self.tie_value not in (0, 1):
            return False, "tie value must be 0 or 1"
        if self.lift_policy not in LIFT_POLICIES:
            return False, f"lift policy must be one of {', '.join(LIFT_POLICIES)}"
        if self.workers < 1:
            return False, "workers must be at least 1"
        if self.ratio_orientation not in RATIO_ORIENTATIONS:
            return False, f"ratio orientation must be one of {', '.join(RATIO_ORIENTATIONS)}"
        try:
            normalize_engine(self.multiple_engine)
        except ConfigError as e:
            return False, str(e)
        for name in ("multiple_config", "hc_config", "sa_config"):
            is_valid, error_msg = getattr(self, name).validate_parameters()
            if not is_valid:
                return False, f"{name}: {error_msg}"
        return True, ""

    def ensure_valid(self) -> "ExperimentConfig":
        is_valid, error_msg = self.validate_parameters()
        if not is_valid:
            raise ConfigError(error_msg)
        return self

    @property
    def inverse_orientation(self) -> str:
        if self.ratio_orientation == RATIO_GAMMA_OVER_PQ:
            return RATIO_PQ_OVER_GAMMA
        return RATIO_GAMMA_OVER_PQ

    def trial_seed(self, trial: int) -> int:
        return self.base_seed + trial

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式（写入报告头部）"""
        return {
            "sizes": [size_label(m, k) for m, k in self.sizes],
            "trials": self.trials,
            "base_seed": self.base_seed,
            "density": self.density,
            "rhs_mode": self.rhs_mode,
            "projection_policy": self.projection_policy,
            "tie_value": self.tie_value,
            "lift_policy": self.lift_policy,
            "multiple_engine": self.multiple_engine,
            "workers": self.workers,
            "ratio_orientation": self.ratio_orientation,
            "multiple_config": self.multiple_config.to_dict(),
            "hc_config": self.hc_config.to_dict(),
            "sa_config": self.sa_config.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        values = dict(data)
        values["sizes"] = parse_sizes(",".join(values.get("sizes", [])))
        for name in ("multiple_config", "hc_config", "sa_config"):
            if name in values:
                values[name] = SolverConfig.from_dict(values[name])
        return cls(**values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExperimentConfig):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        sizes = ",".join(size_label(m, k) for m, k in self.sizes)
        return f"ExperimentConfig(sizes={sizes}, trials={self.trials}, base_seed={self.base_seed})"


def _empty_record(m: int, k: int, trial: int, seed: int) -> Dict[str, Any]:
    record = {column: math.nan for column in RECORD_COLUMNS}
    record.update({"m": m, "k": k, "trial": trial, "seed": seed,
                   "lwpm_rows": m + k + 1, "lwpm_cols": k + 1,
                   "status": STATUS_OK, "error": ""})
    return record


def run_trial(config: ExperimentConfig, m: int, k: int, trial: int) -> Dict[str, Any]:
    """
    一次反向实验

    Returns:
        Dict[str, Any]: 一条记录；出错时 status 为 failed 并记录错误信息
    """
    seed = config.trial_seed(trial)
    record = _empty_record(m, k, trial, seed)
    try:
        matrix = InstanceGenerator.gen_random_matrix(m, k, config.density, seed)
        rhs = InstanceGenerator.gen_rhs(m, config.rhs_mode, seed)
        instance = reverse_reduce(matrix, config.projection_policy, config.tie_value)
        rows, cols = instance.toeplitz_shape
        solution = solve_min_pm_run(instance, config.multiple_engine,
                                    config.multiple_config.with_seed(seed))

        # 齐次系统中零赋值平凡最优，反向提升始终排除它
        hc_config = config.hc_config.copy(seed=seed, forbid_zero=True)
        sa_config = config.sa_config.copy(seed=seed, forbid_zero=True)
        hc = reverse_lift_run(matrix, solution.multiple, instance.poly, ENGINE_HILL_CLIMB,
                              hc_config, config.lift_policy, rhs)
        sa = reverse_lift_run(matrix, solution.multiple, instance.poly, ENGINE_SIMULATED_ANNEAL,
                              sa_config, config.lift_policy, rhs)
        record.update({
            "lwpm_rows": rows,
            "lwpm_cols": cols,
            "weight_p": instance.poly.weight,
            "weight_pq": solution.weight,
            "start_norm": hc.start_violations,
            "norm_hc": hc.violations,
            "norm_sa": sa.violations,
            "ratio_hc": hc.ratio(config.ratio_orientation),
            "ratio_sa": sa.ratio(config.ratio_orientation),
            "inverse_ratio_hc": hc.ratio(config.inverse_orientation),
            "inverse_ratio_sa": sa.ratio(config.inverse_orientation),
        })
    except Exception as e:
        logger.warning("试验 %s #%d 失败: %s", size_label(m, k), trial, e)
        record.update({"status": STATUS_FAILED, "error": str(e) or type(e).__name__})
    return record


def _run_trial_job(job: Tuple[ExperimentConfig, int, int, int]) -> Dict[str, Any]:
    return run_trial(*job)


class ExperimentReport:
    """实验报告：逐次记录、聚合统计和设置快照"""

    def __init__(self, config: ExperimentConfig, records: Sequence[Dict[str, Any]]):
        self.config = config
        self.records = pd.DataFrame(list(records), columns=list(RECORD_COLUMNS))

    @property
    def succeeded(self) -> pd.DataFrame:
        return self.records[self.records["status"] == STATUS_OK]

    @property
    def failed_count(self) -> int:
        return int((self.records["status"] == STATUS_FAILED).sum())

    def trials_for(self, m: int, k: int) -> pd.DataFrame:
        frame = self.records
        return frame[(frame["m"] == m) & (frame["k"] == k)]

    def aggregates(self) -> pd.DataFrame:
        """每个规模、每个比值列的 max/mean/median，只统计成功的试验"""
        rows = []
        for m, k in self.config.sizes:
            trials = self.trials_for(m, k)
            ok = trials[trials["status"] == STATUS_OK]
            row = {"m": m, "k": k, "trials": len(trials), "failed": len(trials) - len(ok)}
            for column in RATIO_COLUMNS:
                values = ok[column].astype(float)
                row[f"{column}_max"] = values.max() if len(values) else math.nan
                row[f"{column}_mean"] = values.mean() if len(values) else math.nan
                row[f"{column}_median"] = values.median() if len(values) else math.nan
            rows.append(row)
        return pd.DataFrame(rows)

    def summary(self, reference: Optional[Dict[Tuple[int, int], Tuple[float, float]]] = None) -> pd.DataFrame:
        """按表格形式汇总：MAX-SAT 规模、LWPM 规模、HC/SA 最大比值"""
        reference = reference or {}
        rows = []
        for _, agg in self.aggregates().iterrows():
            m, k = int(agg["m"]), int(agg["k"])
            ref_hc, ref_sa = reference.get((m, k), (math.nan, math.nan))
            rows.append({
                "MAX-SAT instance": size_label(m, k),
                "LWPM instance": size_label(m + k + 1, k + 1),
                "Max ratio for HC": agg["ratio_hc_max"],
                "Max ratio for SA": agg["ratio_sa_max"],
                "Reference max ratio for HC": ref_hc,
                "Reference max ratio for SA": ref_sa,
            })
        return pd.DataFrame(rows)

    def series(self, m: int, k: int, kind: str) -> pd.DataFrame:
        """(试验序号, 范数) 序列，x 从1开始"""
        if kind not in SERIES_COLUMNS:
            raise ValueError(f"unknown series {kind!r}")
        ok = self.trials_for(m, k)
        ok = ok[ok["status"] == STATUS_OK]
        return pd.DataFrame({"x": (ok["trial"] + 1).astype(int).to_numpy(),
                             "y": ok[SERIES_COLUMNS[kind]].astype(int).to_numpy()})

    def to_dict(self) -> Dict[str, Any]:
        records = []
        for record in self.records.to_dict(orient="records"):
            records.append({key: _plain(value) for key, value in record.items()})
        return {"config": self.config.to_dict(), "records": records}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentReport":
        config = ExperimentConfig.from_dict(data["config"])
        records = []
        for record in data.get("records", []):
            records.append({key: math.nan if value is None else value for key, value in record.items()})
        return cls(config, records)

    def __repr__(self) -> str:
        return f"ExperimentReport({len(self.records)} trials, {self.failed_count} failed)"


def _plain(value):
    """numpy 标量转为 Python 类型，NaN 转为 None"""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


class ExperimentRunner:
    """按设置依次（或并行）运行全部试验"""

    def __init__(self, config: ExperimentConfig, progress: bool = True):
        self.config = config.ensure_valid()
        self.progress = progress

    def jobs(self) -> List[Tuple[ExperimentConfig, int, int, int]]:
        return [(self.config, m, k, trial)
                for m, k in self.config.sizes
                for trial in range(self.config.trials)]

    def run(self) -> ExperimentReport:
        jobs = self.jobs()
        logger.info("开始实验: %d 个规模, 共 %d 次试验", len(self.config.sizes), len(jobs))
        bar = tqdm(total=len(jobs), desc="experiment", disable=not self.progress)
        records = []
        if self.config.workers == 1:
            for job in jobs:
                records.append(_run_trial_job(job))
                bar.update(1)
        else:
            # map 按提交顺序返回结果，与完成顺序无关
            with ProcessPoolExecutor(max_workers=self.config.workers) as executor:
                for record in executor.map(_run_trial_job, jobs):
                    records.append(record)
                    bar.update(1)
        bar.close()
        report = ExperimentReport(self.config, records)
        logger.info("实验完成: %d 次试验, %d 次失败", len(records), report.failed_count)
        return report


def run_reverse_experiment(sizes: Sequence[Tuple[int, int]], trials: int,
                           config: Optional[ExperimentConfig] = None,
                           progress: bool = False) -> ExperimentReport:
    """按给定规模和试验次数运行反向实验，其余设置取自 config"""
    config = config or ExperimentConfig()
    run_config = ExperimentConfig.from_dict({**config.to_dict(),
                                             "sizes": [size_label(m, k) for m, k in sizes],
                                             "trials": trials})
    return ExperimentRunner(run_config, progress).run()
