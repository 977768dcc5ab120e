# -*- coding: utf-8 -*-
"""
GF(2) 多项式与 Toeplitz 算子
"""

from .gf2poly import (Gf2Poly, add, mul, divmod_poly, divides, exact_div, degree, weight,
                      format_poly, parse_poly, STYLE_ALGEBRAIC, STYLE_EXPONENTS, MAX_EXPONENT)
from .toeplitz import (ToeplitzOperator, BinaryMatrix, build, matvec, project_toeplitz,
                       POLICY_MAJORITY, POLICY_FIRST_OCCURRENCE)

__all__ = [
    'Gf2Poly', 'add', 'mul', 'divmod_poly', 'divides', 'exact_div', 'degree', 'weight',
    'format_poly', 'parse_poly', 'STYLE_ALGEBRAIC', 'STYLE_EXPONENTS', 'MAX_EXPONENT',
    'ToeplitzOperator', 'BinaryMatrix', 'build', 'matvec', 'project_toeplitz',
    'POLICY_MAJORITY', 'POLICY_FIRST_OCCURRENCE',
]
