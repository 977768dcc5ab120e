# -*- coding: utf-8 -*-
"""
实验报告导出模块
把 ExperimentReport 写成 CSV 序列、汇总表、逐次记录以及 JSON 报告，可选 Excel 工作簿
"""

import json
import logging
import os
from typing import Dict, List, Tuple

import pandas as pd

from .experiment_runner import SERIES_COLUMNS, ExperimentReport

logger = logging.getLogger(__name__)

# 已发表的 40×30、400×200、1000×500 三组实验的最大比值 (HC, SA)
REFERENCE_MAX_RATIOS: Dict[Tuple[int, int], Tuple[float, float]] = {
    (40, 30): (1.6666666666666667, 2.076923076923077),
    (400, 200): (0.9929078014184397, 0.9850746268656716),
    (1000, 500): (1.0202312138728324, 1.0247093023255813),
}

SERIES_HEADER = ["x", " y"]


class ExportOptions:
    """报告导出选项"""

    def __init__(self):
        self.write_series = True  # 每个规模三条 x, y 序列
        self.write_summary = True  # summary.csv
        self.write_trials = True  # trials.csv
        self.write_json = True  # report.json
        self.write_workbook = False  # report.xlsx
        self.float_format = None  # 传给 to_csv，None 为 repr 精度
        self.file_encoding = "utf-8"  # 文件编码


def series_file_name(m: int, k: int, kind: str) -> str:
    return f"{m}_{k}_{kind}.csv"


class ReportExporter:
    """实验报告导出器"""

    def __init__(self, report: ExperimentReport, options: ExportOptions = None):
        self.report = report
        self.export_options = options or ExportOptions()

    def set_export_options(self, options: ExportOptions):
        self.export_options = options

    def _to_csv(self, frame: pd.DataFrame, file_path: str, **kwargs) -> None:
        frame.to_csv(file_path, index=False, encoding=self.export_options.file_encoding,
                     float_format=self.export_options.float_format, lineterminator="\n",
                     **kwargs)

    def export_series(self, out_dir: str) -> List[str]:
        paths = []
        for m, k in self.report.config.sizes:
            for kind in SERIES_COLUMNS:
                path = os.path.join(out_dir, series_file_name(m, k, kind))
                self._to_csv(self.report.series(m, k, kind), path, header=SERIES_HEADER)
                paths.append(path)
        return paths

    def export_summary(self, out_dir: str) -> str:
        path = os.path.join(out_dir, "summary.csv")
        self._to_csv(self.report.summary(REFERENCE_MAX_RATIOS), path)
        return path

    def export_trials(self, out_dir: str) -> str:
        path = os.path.join(out_dir, "trials.csv")
        self._to_csv(self.report.records, path)
        return path

    def export_json(self, out_dir: str) -> str:
        path = os.path.join(out_dir, "report.json")
        with open(path, "w", encoding=self.export_options.file_encoding, newline="\n") as f:
            json.dump(self.report.to_dict(), f, indent=2, ensure_ascii=False)
            f.write("\n")
        return path

    def export_workbook(self, out_dir: str) -> str:
        """summary / aggregates / trials 三张工作表"""
        path = os.path.join(out_dir, "report.xlsx")
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            self.report.summary(REFERENCE_MAX_RATIOS).to_excel(writer, sheet_name="summary", index=False)
            self.report.aggregates().to_excel(writer, sheet_name="aggregates", index=False)
            self.report.records.to_excel(writer, sheet_name="trials", index=False)
        return path

    def export_all(self, out_dir: str) -> List[str]:
        """
        按导出选项写出全部文件

        Args:
            out_dir: 输出目录，不存在时创建

        Returns:
            List[str]: 写出的文件路径
        """
        os.makedirs(out_dir, exist_ok=True)
        options = self.export_options
        paths = []
        if options.write_series:
            paths.extend(self.export_series(out_dir))
        if options.write_summary:
            paths.append(self.export_summary(out_dir))
        if options.write_trials:
            paths.append(self.export_trials(out_dir))
        if options.write_json:
            paths.append(self.export_json(out_dir))
        if options.write_workbook:
            paths.append(self.export_workbook(out_dir))
        logger.info("导出完成: %d 个文件写入 %s", len(paths), out_dir)
        return paths


def read_series(file_path: str) -> pd.DataFrame:
    """读回 x, y 序列"""
    return pd.read_csv(file_path, skipinitialspace=True)


def read_summary(file_path: str) -> pd.DataFrame:
    return pd.read_csv(file_path)


def read_trials(file_path: str) -> pd.DataFrame:
    return pd.read_csv(file_path, keep_default_na=False, na_values=[""])


def load_report(file_path: str) -> ExperimentReport:
    with open(file_path, "r", encoding="utf-8") as f:
        return ExperimentReport.from_dict(json.load(f))
