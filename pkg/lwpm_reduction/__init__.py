# -*- coding: utf-8 -*-
"""
GF(2) 低重量多项式倍式 (LWPM) 与仿射 MAX-SAT 之间的归约
"""

__version__ = "1.0.0"
