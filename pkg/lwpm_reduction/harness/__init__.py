# -*- coding: utf-8 -*-
"""
实验工具：随机实例、反向归约实验、正向批量验证和报告导出
"""

from .instance_generator import InstanceGenerator
from .experiment_runner import (ExperimentConfig, ExperimentReport, ExperimentRunner,
                                run_reverse_experiment, run_trial, parse_sizes)
from .forward_validation import ForwardValidationReport, run_forward_validation
from .report_exporter import (ExportOptions, ReportExporter, REFERENCE_MAX_RATIOS,
                              read_series, read_summary, read_trials, load_report)

__all__ = [
    'InstanceGenerator',
    'ExperimentConfig', 'ExperimentReport', 'ExperimentRunner', 'run_reverse_experiment',
    'run_trial', 'parse_sizes',
    'ForwardValidationReport', 'run_forward_validation',
    'ExportOptions', 'ReportExporter', 'REFERENCE_MAX_RATIOS',
    'read_series', 'read_summary', 'read_trials', 'load_report',
]
