#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
程序入口：lwpm 命令行
"""

import sys

from lwpm_reduction.cli import run


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
