# -*- coding: utf-8 -*-
"""
仿射 MAX-SAT：约束系统、穷举求解、爬山法与模拟退火
"""

from .affine_system import AffineSystem, satisfied_count, violation_count, exhaustive_solve
from .solver_config import SolverConfig
from .metaheuristics import (LocalSearchState, SolverResult, hill_climb, simulated_anneal,
                             hill_climb_run, simulated_anneal_run, run_solver, neighbours,
                             random_nonzero_assignment)

__all__ = [
    'AffineSystem', 'satisfied_count', 'violation_count', 'exhaustive_solve',
    'SolverConfig',
    'LocalSearchState', 'SolverResult', 'hill_climb', 'simulated_anneal',
    'hill_climb_run', 'simulated_anneal_run', 'run_solver', 'neighbours',
    'random_nonzero_assignment',
]
