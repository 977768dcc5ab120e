# -*- coding: utf-8 -*-
"""
文本格式读写
"""

from .text_formats import (Counterexample, matrix_to_text, parse_matrix, save_matrix, load_matrix,
                           system_to_text, parse_system, save_system, load_system,
                           instance_to_text, parse_instance, save_instance, load_instance,
                           certificate_to_text, parse_certificate, save_certificate,
                           load_certificate, counterexample_to_text, parse_counterexample,
                           save_counterexample, load_counterexample)

__all__ = [
    'Counterexample', 'matrix_to_text', 'parse_matrix', 'save_matrix', 'load_matrix',
    'system_to_text', 'parse_system', 'save_system', 'load_system',
    'instance_to_text', 'parse_instance', 'save_instance', 'load_instance',
    'certificate_to_text', 'parse_certificate', 'save_certificate', 'load_certificate',
    'counterexample_to_text', 'parse_counterexample', 'save_counterexample',
    'load_counterexample',
]
