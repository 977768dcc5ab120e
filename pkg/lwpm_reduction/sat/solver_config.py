# -*- coding: utf-8 -*-
"""
求解器设置模块
用于设置局部搜索的参数，如随机种子、迭代上限、退火温度表等
支持 key=value 文本文件与命令行参数两种来源
"""

import copy
from typing import Any, Dict, Tuple

from ..exceptions import ConfigError

SA_RETURN_BEST = "best"
SA_RETURN_FINAL = "final"
HC_STOCHASTIC = "stochastic"
HC_STEEPEST = "steepest"

_TRUE_WORDS = ("1", "true", "yes", "on")
_FALSE_WORDS = ("0", "false", "no", "off")


def parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in _TRUE_WORDS:
        return True
    if value in _FALSE_WORDS:
        return False
    raise ConfigError(f"not a boolean: {text!r}")


class SolverConfig:
    """局部搜索参数"""

    # 文件/命令行键名 -> (属性名, 类型转换)
    KEYS = {
        "seed": ("seed", int),
        "max-iters": ("max_iters", int),
        "restarts": ("restarts", int),
        "t-initial": ("t_initial", float),
        "t-min": ("t_min", float),
        "alpha": ("alpha", float),
        "forbid-zero": ("forbid_zero", parse_bool),
        "sa-return": ("sa_return", str),
        "hc-variant": ("hc_variant", str),
        "exhaustive-cap": ("exhaustive_cap", int),
    }

    def __init__(self, seed: int = 0, max_iters: int = 10000, restarts: int = 0,
                 t_initial: float = 10.0, t_min: float = 0.001, alpha: float = 0.95,
                 forbid_zero: bool = False, sa_return: str = SA_RETURN_BEST,
                 hc_variant: str = HC_STOCHASTIC, exhaustive_cap: int = 26):
        self.seed = seed  # 64位种子
        self.max_iters = max_iters  # 单次运行的迭代上限
        self.restarts = restarts  # 额外的随机重启次数
        self.t_initial = t_initial  # 初始温度
        self.t_min = t_min  # 终止温度
        self.alpha = alpha  # 降温系数
        self.forbid_zero = forbid_zero  # 禁止全零赋值
        self.sa_return = sa_return  # best: 返回访问过的最优解；final: 返回最后状态
        self.hc_variant = hc_variant  # stochastic / steepest
        self.exhaustive_cap = exhaustive_cap  # 穷举搜索的变量数上限

    def validate_parameters(self) -> Tuple[bool, str]:
        """验证参数"""
        if not 0 <= self.seed < 2 ** 64:
            return False, "seed must be a 64-bit non-negative integer"
        if self.max_iters < 1:
            return False, "max-iters must be positive"
        if self.restarts < 0:
            return False, "restarts must be non-negative"
        if self.t_initial <= 0 or self.t_min <= 0:
            return False, "temperatures must be positive"
        if not 0 < self.alpha < 1:
            return False, "alpha must lie in (0, 1)"
        if self.sa_return not in (SA_RETURN_BEST, SA_RETURN_FINAL):
            return False, f"sa-return must be '{SA_RETURN_BEST}' or '{SA_RETURN_FINAL}'"
        if self.hc_variant not in (HC_STOCHASTIC, HC_STEEPEST):
            return False, f"hc-variant must be '{HC_STOCHASTIC}' or '{HC_STEEPEST}'"
        if self.exhaustive_cap < 1:
            return False, "exhaustive-cap must be positive"
        return True, ""

    def ensure_valid(self) -> "SolverConfig":
        """参数非法时抛出 ConfigError"""
        is_valid, error_msg = self.validate_parameters()
        if not is_valid:
            raise ConfigError(error_msg)
        return self

    def copy(self, **changes) -> "SolverConfig":
        """复制并修改部分参数"""
        clone = copy.copy(self)
        for name, value in changes.items():
            if not hasattr(clone, name):
                raise ConfigError(f"unknown solver setting {name!r}")
            setattr(clone, name, value)
        return clone

    def with_seed(self, seed: int) -> "SolverConfig":
        return self.copy(seed=seed)

    def apply(self, key: str, raw_value: str) -> None:
        """按文件/命令行键名设置一个参数"""
        normalized = key.strip().replace("_", "-")
        if normalized not in self.KEYS:
            raise ConfigError(f"unknown solver setting {key!r}")
        attribute, convert = self.KEYS[normalized]
        try:
            setattr(self, attribute, convert(raw_value.strip()))
        except ValueError as e:
            raise ConfigError(f"bad value for {normalized}: {raw_value!r}") from e

    def load_file(self, file_path: str) -> "SolverConfig":
        """读取 key=value 配置文件，# 开头为注释"""
        with open(file_path, "r", encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                content = line.split("#", 1)[0].strip()
                if not content:
                    continue
                if "=" not in content:
                    raise ConfigError(f"{file_path}:{line_no}: expected key=value")
                key, value = content.split("=", 1)
                self.apply(key, value)
        return self

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "seed": self.seed,
            "max_iters": self.max_iters,
            "restarts": self.restarts,
            "t_initial": self.t_initial,
            "t_min": self.t_min,
            "alpha": self.alpha,
            "forbid_zero": self.forbid_zero,
            "sa_return": self.sa_return,
            "hc_variant": self.hc_variant,
            "exhaustive_cap": self.exhaustive_cap,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SolverConfig":
        """从字典加载，缺失的键取默认值"""
        config = cls()
        for name, value in data.items():
            if not hasattr(config, name):
                raise ConfigError(f"unknown solver setting {name!r}")
            setattr(config, name, value)
        return config

    def __eq__(self, other) -> bool:
        if not isinstance(other, SolverConfig):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __str__(self) -> str:
        return (f"SolverConfig(seed={self.seed}, max_iters={self.max_iters}, "
                f"T={self.t_initial}->{self.t_min}, alpha={self.alpha})")

    def __repr__(self) -> str:
        return f"SolverConfig({self.to_dict()})"
