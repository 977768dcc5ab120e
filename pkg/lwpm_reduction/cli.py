# -*- coding: utf-8 -*-
"""
命令行接口
每个子命令对应一个归约或求解操作；标准输出只写结果，日志和进度条写到标准错误
退出码：0 成功，1 求解器无法继续或验证失败，2 输入错误
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from .algebra.gf2poly import POLY_STYLES, STYLE_ALGEBRAIC, format_poly, parse_poly
from .algebra.toeplitz import PROJECTION_POLICIES, POLICY_MAJORITY
from .data import text_formats
from .exceptions import ConfigError, IdentityViolation, LwpmError, SolverInfeasibleError
from .harness.experiment_runner import ExperimentConfig, ExperimentRunner, parse_sizes
from .harness.forward_validation import run_forward_validation
from .harness.instance_generator import RHS_MODES, InstanceGenerator
from .harness.report_exporter import REFERENCE_MAX_RATIOS, ExportOptions, ReportExporter
from .reduction.min_pm import (LIFT_POLICIES, RATIO_ORIENTATIONS, MinPmInstance, bound_min_pm,
                               decide_min_pm_run, forward_reduce, reverse_reduce, solve_min_pm_run)
from .reduction.oracle import brute_maxsat, brute_min_pm
from .sat.metaheuristics import ENGINE_ALIASES, run_solver
from .sat.solver_config import SolverConfig

logger = logging.getLogger(__name__)

PROG = "lwpm"
SEED_ENV = "LWPM_SEED"
ENGINE_CHOICES = sorted(ENGINE_ALIASES)
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2


# ---------------------------------------------------------------- 解析器
class CliParser(argparse.ArgumentParser):
    """参数错误时输出一行诊断并以退出码2结束"""

    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common_parser() -> argparse.ArgumentParser:
    """全局参数；默认值为 SUPPRESS，放在子命令前后都可以"""
    common = CliParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, help="随机种子（未给出时读取 LWPM_SEED）")
    common.add_argument("--format", choices=POLY_STYLES, help="多项式文本格式")
    common.add_argument("--config", metavar="FILE", help="key=value 求解器配置文件")
    common.add_argument("--max-iters", type=int)
    common.add_argument("--restarts", type=int)
    common.add_argument("--t-initial", type=float)
    common.add_argument("--t-min", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--forbid-zero", action="store_true")
    common.add_argument("--sa-return", choices=("best", "final"))
    common.add_argument("--hc-variant", choices=("stochastic", "steepest"))
    common.add_argument("--exhaustive-cap", type=int)
    common.add_argument("--log-level", choices=LOG_LEVELS)
    common.add_argument("-v", "--verbose", action="store_true", help="等价于 --log-level INFO")
    common.add_argument("--no-progress", action="store_true", help="不显示进度条")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = CliParser(
        prog=PROG, parents=[common],
        description="GF(2) 低重量多项式倍式与仿射 MAX-SAT 之间的归约工具")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("solve-lwpm", parents=[common], help="求重量最小的倍式")
    p.add_argument("poly")
    p.add_argument("-n", "--degree-bound", dest="n", type=int, required=True)
    p.add_argument("--engine", choices=ENGINE_CHOICES, default="exhaustive")

    p = sub.add_parser("decide-lwpm", parents=[common], help="判定是否存在重量不超过 w 的倍式")
    p.add_argument("poly")
    p.add_argument("-n", "--degree-bound", dest="n", type=int, required=True)
    p.add_argument("-w", "--weight", dest="w", type=int, required=True)
    p.add_argument("--bound", action="store_true", help="超出穷举上限时用爬山法上界")

    p = sub.add_parser("evaluate-lwpm", parents=[common], help="求最小重量")
    p.add_argument("poly")
    p.add_argument("-n", "--degree-bound", dest="n", type=int, required=True)
    p.add_argument("--bound", action="store_true", help="超出穷举上限时用爬山法上界")

    p = sub.add_parser("reduce", parents=[common], help="输出正向归约得到的约束系统")
    p.add_argument("poly")
    p.add_argument("-n", "--degree-bound", dest="n", type=int, required=True)
    p.add_argument("--pinned", action="store_true", help="输出固定 x0=1 之后的系统")
    p.add_argument("--certificate", action="store_true", help="输出完整的归约证书")
    p.add_argument("-o", "--output", metavar="FILE")

    p = sub.add_parser("rev-reduce", parents=[common], help="把 0/1 矩阵投影为 MIN-PM 实例")
    p.add_argument("matrix_file")
    p.add_argument("--policy", choices=PROJECTION_POLICIES, default=POLICY_MAJORITY)
    p.add_argument("--tie-value", type=int, choices=(0, 1), default=1)
    p.add_argument("-o", "--output", metavar="FILE")

    p = sub.add_parser("solve-maxsat", parents=[common], help="求解约束系统文件")
    p.add_argument("system_file")
    p.add_argument("--engine", choices=ENGINE_CHOICES, default="exhaustive")

    p = sub.add_parser("oracle", parents=[common], help="暴力求解小规模实例")
    oracle_sub = p.add_subparsers(dest="oracle_kind", metavar="KIND")
    oracle_sub.required = True
    q = oracle_sub.add_parser("lwpm", parents=[common])
    q.add_argument("poly")
    q.add_argument("-n", "--degree-bound", dest="n", type=int, required=True)
    q = oracle_sub.add_parser("maxsat", parents=[common])
    q.add_argument("system_file")

    p = sub.add_parser("experiment", parents=[common], help="运行反向归约实验")
    p.add_argument("--sizes", default="40x30", help="如 40x30,400x200")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--out", metavar="DIR", help="输出目录")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--rhs", choices=RHS_MODES, default="homogeneous")
    p.add_argument("--policy", choices=PROJECTION_POLICIES, default=POLICY_MAJORITY)
    p.add_argument("--tie-value", type=int, choices=(0, 1), default=1)
    p.add_argument("--lift-policy", choices=LIFT_POLICIES, default=LIFT_POLICIES[0])
    p.add_argument("--multiple-engine", choices=ENGINE_CHOICES, default="hill_climb")
    p.add_argument("--orientation", choices=RATIO_ORIENTATIONS, default=RATIO_ORIENTATIONS[0])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--xlsx", action="store_true", help="另外写出 report.xlsx")

    p = sub.add_parser("validate", parents=[common], help="批量验证正向归约")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--max-t", type=int, default=11)

    p = sub.add_parser("gen-matrix", parents=[common], help="生成随机 0/1 矩阵文件")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("-o", "--output", metavar="FILE")
    return parser


# ---------------------------------------------------------------- 配置
def _option(args: argparse.Namespace, name: str, default=None):
    return getattr(args, name, default)


def build_solver_config(args: argparse.Namespace, environ=None) -> SolverConfig:
    """默认值 -> 配置文件 -> 命令行参数；种子未给出时读取 LWPM_SEED"""
    environ = os.environ if environ is None else environ
    config = SolverConfig()
    if _option(args, "config"):
        config.load_file(args.config)
    if _option(args, "seed") is not None:
        config.seed = args.seed
    elif environ.get(SEED_ENV):
        try:
            config.seed = int(environ[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer, got {environ[SEED_ENV]!r}") from None
    for attribute in ("max_iters", "restarts", "t_initial", "t_min", "alpha",
                      "sa_return", "hc_variant", "exhaustive_cap"):
        value = _option(args, attribute)
        if value is not None:
            setattr(config, attribute, value)
    if _option(args, "forbid_zero"):
        config.forbid_zero = True
    return config.ensure_valid()


def configure_logging(args: argparse.Namespace) -> None:
    level = _option(args, "log_level")
    if level is None:
        level = "INFO" if _option(args, "verbose") else "WARNING"
    logging.basicConfig(level=getattr(logging, level), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _style(args: argparse.Namespace) -> str:
    return _option(args, "format") or STYLE_ALGEBRAIC


def _instance(args: argparse.Namespace) -> MinPmInstance:
    return MinPmInstance(parse_poly(args.poly, _style(args)), args.n)


def _emit(text: str, output: Optional[str], out) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        out.write(text)


def _bits(assignment) -> str:
    return "".join(str(int(b)) for b in assignment)


# ---------------------------------------------------------------- 子命令
def cmd_solve_lwpm(args, config, out) -> int:
    solution = solve_min_pm_run(_instance(args), args.engine, config)
    out.write(f"{format_poly(solution.multiple, _style(args))}\n")
    out.write(f"weight {solution.weight}\n")
    return EXIT_OK


def _evaluate(args, config):
    instance = _instance(args)
    if args.bound:
        return bound_min_pm(instance, config)
    return solve_min_pm_run(instance, "exhaustive", config).weight, True


def cmd_decide_lwpm(args, config, out) -> int:
    answer, settled = decide_min_pm_run(_instance(args), args.w, not args.bound, config)
    out.write(("true" if answer else "false") + ("" if settled else " (upper bound)") + "\n")
    return EXIT_OK


def cmd_evaluate_lwpm(args, config, out) -> int:
    weight, exact = _evaluate(args, config)
    out.write(f"weight {weight}" + ("" if exact else " (upper bound)") + "\n")
    return EXIT_OK


def cmd_reduce(args, config, out) -> int:
    certificate = forward_reduce(_instance(args), pin=True)
    if args.certificate:
        text = text_formats.certificate_to_text(certificate, _style(args))
    elif args.pinned:
        text = text_formats.system_to_text(certificate.solve_system)
    else:
        text = text_formats.system_to_text(certificate.system)
    _emit(text, args.output, out)
    return EXIT_OK


def cmd_rev_reduce(args, config, out) -> int:
    matrix = text_formats.load_matrix(args.matrix_file)
    instance = reverse_reduce(matrix, args.policy, args.tie_value)
    _emit(text_formats.instance_to_text(instance, _style(args)), args.output, out)
    return EXIT_OK


def cmd_solve_maxsat(args, config, out) -> int:
    system = text_formats.load_system(args.system_file)
    result = run_solver(system, args.engine, config)
    out.write(f"{_bits(result.assignment)}\n")
    out.write(f"satisfied {result.satisfied} of {system.m}\n")
    return EXIT_OK


def cmd_oracle(args, config, out) -> int:
    if args.oracle_kind == "lwpm":
        instance = _instance(args)
        multiple, weight = brute_min_pm(instance.poly, instance.n, config.exhaustive_cap)
        out.write(f"{format_poly(multiple, _style(args))}\n")
        out.write(f"weight {weight}\n")
        return EXIT_OK
    system = text_formats.load_system(args.system_file)
    assignment, satisfied = brute_maxsat(system, config.forbid_zero, config.exhaustive_cap)
    out.write(f"{_bits(assignment)}\n")
    out.write(f"satisfied {satisfied} of {system.m}\n")
    return EXIT_OK


def cmd_experiment(args, config, out) -> int:
    experiment = ExperimentConfig(
        sizes=parse_sizes(args.sizes), trials=args.trials, base_seed=config.seed,
        density=args.density, rhs_mode=args.rhs, projection_policy=args.policy,
        tie_value=args.tie_value, lift_policy=args.lift_policy,
        multiple_engine=args.multiple_engine, workers=args.workers,
        ratio_orientation=args.orientation, multiple_config=config.copy(),
        hc_config=config.copy(), sa_config=config.copy())
    report = ExperimentRunner(experiment, progress=not _option(args, "no_progress", False)).run()
    if args.out:
        options = ExportOptions()
        options.write_workbook = args.xlsx
        ReportExporter(report, options).export_all(args.out)
    report.summary(REFERENCE_MAX_RATIOS).to_csv(out, index=False, lineterminator="\n")
    return EXIT_OK


def cmd_validate(args, config, out) -> int:
    try:
        report = run_forward_validation(args.count, args.max_degree, config.seed, args.max_t,
                                        progress=not _option(args, "no_progress", False))
    except IdentityViolation as e:
        if e.counterexample is not None:
            out.write(text_formats.counterexample_to_text(e.counterexample, _style(args)))
        raise
    out.write(report.to_text())
    return EXIT_OK


def cmd_gen_matrix(args, config, out) -> int:
    matrix = InstanceGenerator.gen_random_matrix(args.m, args.k, args.density, config.seed)
    _emit(text_formats.matrix_to_text(matrix), args.output, out)
    return EXIT_OK


COMMANDS = {
    "solve-lwpm": cmd_solve_lwpm,
    "decide-lwpm": cmd_decide_lwpm,
    "evaluate-lwpm": cmd_evaluate_lwpm,
    "reduce": cmd_reduce,
    "rev-reduce": cmd_rev_reduce,
    "solve-maxsat": cmd_solve_maxsat,
    "oracle": cmd_oracle,
    "experiment": cmd_experiment,
    "validate": cmd_validate,
    "gen-matrix": cmd_gen_matrix,
}


def run(argv: Optional[List[str]] = None, out=None, err=None, environ=None) -> int:
    """
    解析参数并执行子命令

    Args:
        argv: 参数列表，None 为 sys.argv[1:]
        out, err: 标准输出/标准错误，测试时可替换
        environ: 环境变量，None 为 os.environ

    Returns:
        int: 退出码
    """
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT
    configure_logging(args)
    try:
        config = build_solver_config(args, environ)
        return COMMANDS[args.command](args, config, out)
    except SolverInfeasibleError as e:
        err.write(f"{PROG}: infeasible: {e}\n")
        return EXIT_INFEASIBLE
    except IdentityViolation as e:
        err.write(f"{PROG}: {e}\n")
        return EXIT_INFEASIBLE
    except (LwpmError, OSError) as e:
        err.write(f"{PROG}: error: {e}\n")
        return EXIT_INPUT


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)

