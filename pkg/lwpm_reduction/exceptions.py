# -*- coding: utf-8 -*-
"""
异常定义模块
所有可由用户输入触发的错误都继承自 LwpmError，CLI 据此决定退出码
"""

from typing import Optional


class LwpmError(Exception):
    """本项目所有错误的基类"""


class PolynomialParseError(LwpmError, ValueError):
    """多项式文本解析错误，position 为出错字符的位置（从0开始）"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class ZeroDivisorError(LwpmError, ZeroDivisionError):
    """除数为零多项式"""

    def __init__(self, message: str = "zero divisor"):
        super().__init__(message)


class DimensionError(LwpmError, ValueError):
    """长度或维度不匹配、空矩阵、n <= deg(P) 等"""


class FormatError(LwpmError, ValueError):
    """矩阵/约束系统/实例文件格式错误，line 为出错行号（从1开始）"""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InstanceTooLargeError(LwpmError):
    """超过穷举搜索上限"""

    def __init__(self, size: int, cap: int):
        super().__init__(f"instance too large for exhaustive search ({size} variables, cap {cap})")
        self.size = size
        self.cap = cap


class ZeroMultipleError(LwpmError, ValueError):
    """零倍式不是 MIN-PM 的可行解"""

    def __init__(self, message: str = "zero multiple excluded"):
        super().__init__(message)


class NotDivisibleError(LwpmError, ValueError):
    """K 不是 P 的倍式"""


class SolverInfeasibleError(LwpmError):
    """求解器无法继续：邻域为空或起点违反 forbid_zero"""


class ConfigError(LwpmError, ValueError):
    """求解器或实验配置非法"""


class IdentityViolation(LwpmError):
    """正向归约恒等式被违反，counterexample 可序列化为文本"""

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
