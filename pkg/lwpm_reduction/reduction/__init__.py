# -*- coding: utf-8 -*-
"""
MIN-PM 与仿射 MAX-SAT 之间的正向、反向归约，以及暴力求解器
"""

from .min_pm import (MinPmInstance, ReductionCertificate, MinPmSolution, ReverseLiftResult,
                     instance_size, forward_reduce, lift_solution, normalize_multiple,
                     solve_min_pm, solve_min_pm_run, bound_min_pm, evaluate_min_pm,
                     decide_min_pm, decide_min_pm_run, reverse_reduce, reverse_lift,
                     reverse_lift_run)
from .oracle import brute_min_pm, brute_maxsat

__all__ = [
    'MinPmInstance', 'ReductionCertificate', 'MinPmSolution', 'ReverseLiftResult',
    'instance_size', 'forward_reduce', 'lift_solution', 'normalize_multiple',
    'solve_min_pm', 'solve_min_pm_run', 'bound_min_pm', 'evaluate_min_pm',
    'decide_min_pm', 'decide_min_pm_run', 'reverse_reduce', 'reverse_lift', 'reverse_lift_run',
    'brute_min_pm', 'brute_maxsat',
]
