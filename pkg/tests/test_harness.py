# -*- coding: utf-8 -*-

import math
import os

import numpy as np
import pandas as pd
import pytest

from lwpm_reduction.data.text_formats import parse_counterexample, counterexample_to_text
from lwpm_reduction.exceptions import ConfigError, DimensionError, IdentityViolation
from lwpm_reduction.harness import experiment_runner, forward_validation
from lwpm_reduction.harness.experiment_runner import (ExperimentConfig, ExperimentReport,
                                                      ExperimentRunner, parse_sizes,
                                                      run_reverse_experiment, run_trial)
from lwpm_reduction.harness.forward_validation import run_forward_validation
from lwpm_reduction.harness.instance_generator import InstanceGenerator
from lwpm_reduction.harness.report_exporter import (REFERENCE_MAX_RATIOS, ExportOptions,
                                                    ReportExporter, load_report, read_series,
                                                    read_summary, read_trials)
from lwpm_reduction.sat.solver_config import SolverConfig


class TestInstanceGenerator:
    def test_full_density(self):
        matrix = InstanceGenerator.gen_random_matrix(5, 4, density=1.0, seed=3)
        assert matrix.to_numpy().all()

    def test_deterministic(self):
        first = InstanceGenerator.gen_random_matrix(30, 20, 0.5, seed=17)
        second = InstanceGenerator.gen_random_matrix(30, 20, 0.5, seed=17)
        assert first == second
        assert first != InstanceGenerator.gen_random_matrix(30, 20, 0.5, seed=18)

    def test_density_statistics(self):
        m, k, density = 10, 10, 0.3
        ones = sum(int(InstanceGenerator.gen_random_matrix(m, k, density, seed=s).to_numpy().sum())
                   for s in range(1000))
        n = 1000 * m * k
        sigma = math.sqrt(n * density * (1 - density))
        assert abs(ones - n * density) < 5 * sigma

    def test_bad_arguments(self):
        with pytest.raises(DimensionError):
            InstanceGenerator.gen_random_matrix(0, 3)
        with pytest.raises(DimensionError):
            InstanceGenerator.gen_random_matrix(3, 3, density=0.0)

    def test_rhs_modes(self):
        assert InstanceGenerator.gen_rhs(5, "homogeneous") is None
        rhs = InstanceGenerator.gen_rhs(64, "random", seed=1)
        assert rhs.shape == (64,)
        assert set(rhs.tolist()) <= {0, 1}


class TestForwardValidation:
    def test_passes(self):
        report = run_forward_validation(count=30, max_degree=8, seed=1, max_t=8)
        assert report.passed == 30
        assert report.failed == 0
        assert report.measure_checks == 30 * 4

    @pytest.mark.slow
    def test_full_run(self):
        report = run_forward_validation(count=100, max_degree=10, seed=0)
        assert report.passed == 100

    def test_violation_carries_counterexample(self, monkeypatch):
        monkeypatch.setattr(forward_validation, "brute_min_pm",
                            lambda poly, n, cap: (poly, poly.weight + 1))
        with pytest.raises(IdentityViolation) as info:
            run_forward_validation(count=2, max_degree=4, seed=0, max_t=4)
        counterexample = info.value.counterexample
        assert counterexample.kind == forward_validation.KIND_OPTIMUM
        text = counterexample_to_text(counterexample)
        assert parse_counterexample(text) == counterexample


def small_config(**changes):
    values = dict(sizes=[(12, 6)], trials=3, base_seed=5)
    values.update(changes)
    return ExperimentConfig(**values)


class TestExperiment:
    def test_parse_sizes(self):
        assert parse_sizes("40x30, 400x200") == [(40, 30), (400, 200)]
        for text in ("40", "40x", "axb", "0x3", ""):
            with pytest.raises(ConfigError):
                parse_sizes(text)

    def test_config_validation(self):
        assert small_config().validate_parameters() == (True, "")
        for changes in ({"trials": 0}, {"density": 1.5}, {"rhs_mode": "odd"},
                        {"lift_policy": "middle"}, {"multiple_engine": "tabu"},
                        {"ratio_orientation": "sideways"}, {"workers": 0},
                        {"hc_config": SolverConfig(alpha=2.0)}):
            with pytest.raises(ConfigError):
                small_config(**changes).ensure_valid()

    def test_config_dict_round_trip(self):
        config = small_config(rhs_mode="random", sa_config=SolverConfig(alpha=0.8))
        assert ExperimentConfig.from_dict(config.to_dict()) == config

    def test_trial_record(self):
        record = run_trial(small_config(), 12, 6, 0)
        assert record["status"] == "ok"
        assert (record["lwpm_rows"], record["lwpm_cols"]) == (19, 7)
        assert record["seed"] == 5
        assert record["ratio_hc"] == record["norm_hc"] / record["weight_pq"]
        assert record["norm_hc"] <= record["start_norm"]
        assert record["norm_sa"] <= record["start_norm"]

    def test_report_shape_and_aggregates(self):
        report = run_reverse_experiment([(12, 6), (10, 4)], 4, small_config())
        assert len(report.records) == 8
        assert report.failed_count == 0
        aggregates = report.aggregates()
        for _, row in aggregates.iterrows():
            trials = report.trials_for(int(row["m"]), int(row["k"]))
            assert row["ratio_hc_max"] == trials["ratio_hc"].max()
            assert row["ratio_sa_median"] == pytest.approx(trials["ratio_sa"].median())
        series = report.series(12, 6, "hc")
        assert series["x"].tolist() == [1, 2, 3, 4]
        assert series["y"].tolist() == report.trials_for(12, 6)["norm_hc"].astype(int).tolist()

    def test_deterministic(self):
        first = ExperimentRunner(small_config(), progress=False).run()
        second = ExperimentRunner(small_config(), progress=False).run()
        assert first.to_dict() == second.to_dict()

    def test_parallel_matches_serial(self):
        serial = ExperimentRunner(small_config(), progress=False).run()
        parallel = ExperimentRunner(small_config(workers=2), progress=False).run()
        assert serial.to_dict()["records"] == parallel.to_dict()["records"]

    def test_failed_trials_are_recorded(self):
        # 12x6 的 t+1 = 7 超过穷举上限 3
        config = small_config(multiple_engine="exhaustive",
                              multiple_config=SolverConfig(exhaustive_cap=3))
        report = ExperimentRunner(config, progress=False).run()
        assert report.failed_count == 3
        assert (report.records["status"] == "failed").all()
        assert "instance too large" in report.records["error"].iloc[0]
        assert math.isnan(report.aggregates()["ratio_hc_max"].iloc[0])
        assert report.series(12, 6, "sa").empty

    def test_unexpected_errors_fail_only_their_trial(self, monkeypatch):
        original = experiment_runner.reverse_lift_run
        calls = []

        def flaky_lift(*args, **kwargs):
            calls.append(1)
            if len(calls) == 1:
                raise ValueError("operands could not be broadcast")
            return original(*args, **kwargs)

        monkeypatch.setattr(experiment_runner, "reverse_lift_run", flaky_lift)
        report = ExperimentRunner(small_config(), progress=False).run()
        assert len(report.records) == 3
        assert report.failed_count == 1
        assert report.records["status"].tolist() == ["failed", "ok", "ok"]
        assert report.records["error"].iloc[0] == "operands could not be broadcast"
        assert report.series(12, 6, "hc")["x"].tolist() == [2, 3]

    def test_summary_columns(self):
        report = run_reverse_experiment([(40, 30)], 2, small_config())
        summary = report.summary(REFERENCE_MAX_RATIOS)
        row = summary.iloc[0]
        assert row["MAX-SAT instance"] == "40x30"
        assert row["LWPM instance"] == "71x31"
        assert row["Reference max ratio for HC"] == 1.6666666666666667
        assert row["Reference max ratio for SA"] == 2.076923076923077

    def test_report_dict_round_trip(self):
        report = ExperimentRunner(small_config(), progress=False).run()
        again = ExperimentReport.from_dict(report.to_dict())
        assert again.to_dict() == report.to_dict()


class TestExport:
    def test_files_reparse(self, tmp_path):
        report = ExperimentRunner(small_config(), progress=False).run()
        paths = ReportExporter(report).export_all(str(tmp_path))
        names = sorted(os.path.basename(p) for p in paths)
        assert names == ["12_6_hc.csv", "12_6_pq.csv", "12_6_sa.csv", "report.json",
                         "summary.csv", "trials.csv"]

        with open(tmp_path / "12_6_pq.csv", encoding="utf-8") as f:
            assert f.readline() == "x, y\n"
        series = read_series(str(tmp_path / "12_6_pq.csv"))
        assert series["x"].tolist() == [1, 2, 3]
        assert series["y"].tolist() == report.series(12, 6, "pq")["y"].tolist()

        summary = read_summary(str(tmp_path / "summary.csv"))
        assert summary["LWPM instance"].tolist() == ["19x7"]
        assert summary["Max ratio for HC"].iloc[0] == pytest.approx(report.records["ratio_hc"].max())

        trials = read_trials(str(tmp_path / "trials.csv"))
        assert len(trials) == 3
        assert np.allclose(trials["ratio_sa"], report.records["ratio_sa"])

        assert load_report(str(tmp_path / "report.json")).to_dict() == report.to_dict()

    def test_output_is_byte_identical(self, tmp_path):
        for name in ("a", "b"):
            report = ExperimentRunner(small_config(), progress=False).run()
            ReportExporter(report).export_all(str(tmp_path / name))
        for name in os.listdir(tmp_path / "a"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_workbook(self, tmp_path):
        pytest.importorskip("openpyxl")
        options = ExportOptions()
        options.write_series = False
        options.write_workbook = True
        report = ExperimentRunner(small_config(trials=1), progress=False).run()
        paths = ReportExporter(report, options).export_all(str(tmp_path))
        assert str(tmp_path / "report.xlsx") in paths
        sheets = pd.read_excel(tmp_path / "report.xlsx", sheet_name=None, engine="openpyxl")
        assert set(sheets) == {"summary", "aggregates", "trials"}


@pytest.mark.slow
def test_reverse_experiment_at_scale():
    report = run_reverse_experiment([(400, 200)], 50, ExperimentConfig())
    assert len(report.records) == 50
    assert report.failed_count == 0
    summary = report.summary(REFERENCE_MAX_RATIOS)
    assert summary["LWPM instance"].tolist() == ["601x201"]
    assert summary["Max ratio for HC"].iloc[0] >= report.records["ratio_hc"].median()
    for column in ("ratio_hc", "ratio_sa"):
        assert 0.8 <= report.records[column].median() <= 1.2
