import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from sindybench import ConfigurationError
from sindybench.bench import (
    BenchmarkConfig,
    BenchmarkReport,
    CorrelationRow,
    DetailRow,
    PROPERTY_NAMES,
    load_config,
    main,
    read_report,
    render_plots,
    run_benchmark,
    validate_config,
    write_reports,
)
from sindybench.metrics import PropertyRecord


SMOKE_CONFIG = BenchmarkConfig(
    systems=("Lorenz63", "Rossler"),
    optimizers=("stlsq", "weak_stlsq"),
    noise_percents=(0.0,),
    n_models=10,
    grid_points=25,
    master_seed=42,
    miosr_time_limit_s=1.0,
)


@pytest.fixture(scope="module")
def smoke_report():
    return run_benchmark(SMOKE_CONFIG)


class TestConfig:
    def test_defaults_valid(self):
        validate_config(BenchmarkConfig())

    def test_bad_optimizer(self):
        with pytest.raises(ConfigurationError):
            validate_config(BenchmarkConfig(optimizers=("gradient_descent",)))

    def test_bad_fraction(self):
        with pytest.raises(ConfigurationError):
            validate_config(BenchmarkConfig(subsample_fraction=0.0))

    def test_toml_round_trip(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text(
            'systems = ["Lorenz63"]\n'
            'optimizers = ["stlsq", "miosr"]\n'
            "noise_percents = [0.0, 1.0]\n"
            "grid_points = 50\n"
            "n_models = 4\n"
            "master_seed = 7\n"
            'output_dir = "out"\n'
            "[weak]\n"
            "n_subdomains = 100\n"
        )
        cfg = load_config(path)
        assert cfg.systems == ("Lorenz63",)
        assert cfg.optimizers == ("stlsq", "miosr")
        assert cfg.noise_percents == (0.0, 1.0)
        assert cfg.weak.n_subdomains == 100
        assert cfg.grid_points == 50

    def test_toml_unknown_key(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text("grid_pts = 50\n")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_toml_syntax_error(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text("systems = [unclosed\n")
        with pytest.raises(ConfigurationError):
            load_config(path)


class TestRunBenchmark:
    def test_row_counting_contract(self, smoke_report):
        rows = smoke_report.detail_rows
        assert len(rows) == 2 * 2 * 1 * 10  # systems x optimizers x noise x models
        assert all(r.valid for r in rows)

    def test_clean_data_quality(self, smoke_report):
        for row in smoke_report.detail_rows:
            assert row.e_rmse < 0.10
        assert all(r.runtime_s == 0.0 for r in smoke_report.detail_rows)

    def test_summary_schema(self, smoke_report):
        assert set(smoke_report.summary) == {"stlsq/0.0", "weak_stlsq/0.0"}
        for entry in smoke_report.summary.values():
            assert set(entry) == {
                "mean_e_coef",
                "median_e_coef",
                "mean_e_rmse",
                "median_e_rmse",
                "total_runtime_s",
            }
            assert entry["total_runtime_s"] > 0

    def test_properties_present(self, smoke_report):
        assert set(smoke_report.properties) == {"Lorenz63", "Rossler"}
        lor = smoke_report.properties["Lorenz63"]
        assert lor.lyapunov_max > 0.5
        assert lor.nonlinearity_score == 16

    def test_correlation_row_count(self, smoke_report):
        assert len(smoke_report.correlations) == 2 * 1 * 4

    def test_determinism_across_runs(self, smoke_report, tmp_path):
        again = run_benchmark(SMOKE_CONFIG)
        a_dir, b_dir = tmp_path / "a", tmp_path / "b"
        write_reports(smoke_report, a_dir)
        write_reports(again, b_dir)
        for name in ("details.csv", "properties.csv", "correlations.csv"):
            assert (a_dir / name).read_bytes() == (b_dir / name).read_bytes()


class TestWriteReports:
    def test_empty_report_headers_only(self, tmp_path):
        report = BenchmarkReport([], {}, {}, [])
        files = write_reports(report, tmp_path)
        assert {f.name for f in files} == {
            "details.csv", "summary.json", "properties.csv", "correlations.csv",
        }
        details = (tmp_path / "details.csv").read_text().splitlines()
        assert details == [
            "system,optimizer,noise_percent,hyperparameter,member,e_coef,"
            "e_rmse,k,aic,runtime_s,proved_optimal,valid"
        ]
        assert json.loads((tmp_path / "summary.json").read_text()) == {}

    def test_summary_json_parses(self, smoke_report, tmp_path):
        write_reports(smoke_report, tmp_path)
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert set(summary) == {"stlsq/0.0", "weak_stlsq/0.0"}

    def test_report_round_trip(self, smoke_report, tmp_path):
        write_reports(smoke_report, tmp_path)
        loaded = read_report(tmp_path)
        assert len(loaded.detail_rows) == len(smoke_report.detail_rows)
        assert set(loaded.properties) == set(smoke_report.properties)
        # correlations recomputed from details must match the originals
        original = {
            (r.optimizer, r.noise_percent, r.property_name): r.e_rmse_r2
            for r in smoke_report.correlations
        }
        for r in loaded.correlations:
            key = (r.optimizer, r.noise_percent, r.property_name)
            if math.isnan(r.e_rmse_r2):
                assert math.isnan(original[key])
            else:
                assert original[key] == pytest.approx(r.e_rmse_r2, rel=1e-9)


def synthetic_power_law_report():
    """Four systems with e_rmse following property^2 exactly."""
    rows, properties = [], {}
    xs = [1.0, 2.0, 4.0, 8.0]
    for i, x in enumerate(xs):
        name = f"sys{i}"
        properties[name] = PropertyRecord(
            lyapunov_max=x,
            scale_separation=x,
            description_length=x,
            nonlinearity_score=int(x),
        )
        rows.append(
            DetailRow(
                system=name, optimizer="stlsq", noise_percent=0.0,
                hyperparameter=0.1, member=0, e_coef=x**2, e_rmse=x**2,
                k=7, aic=-10.0, runtime_s=0.0, proved_optimal=True, valid=True,
            )
        )
    from sindybench.bench import _correlate

    class _Cfg:
        optimizers = ("stlsq",)

    correlations = _correlate(_Cfg, rows, properties)
    return BenchmarkReport(rows, {}, properties, correlations)


class TestRenderPlots:
    def test_smoke_svgs_are_valid_xml(self, smoke_report, tmp_path):
        files = render_plots(smoke_report, tmp_path)
        error_plots = [f for f in files if f.name.startswith("errors_")]
        assert len(error_plots) == 2
        assert any(f.name == "nonlinearity_summary.svg" for f in files)
        for path in files:
            root = ET.parse(path).getroot()
            assert root.tag.endswith("svg")

    def test_legend_lists_optimizers(self, smoke_report, tmp_path):
        files = render_plots(smoke_report, tmp_path)
        scatter = [f for f in files if f.name.startswith("properties_")]
        assert scatter
        text = scatter[0].read_text()
        assert "stlsq" in text
        assert "weak_stlsq" in text

    def test_power_law_slope_annotation(self, tmp_path):
        report = synthetic_power_law_report()
        fit = [
            r for r in report.correlations
            if r.property_name == "scale_separation"
        ][0]
        assert fit.e_rmse_family == "log_log"
        assert fit.e_rmse_slope == pytest.approx(2.0)
        files = render_plots(report, tmp_path)
        scatter = [f for f in files if f.name.startswith("properties_")][0]
        assert "slope=2" in scatter.read_text()

    def test_single_point_emits_without_fit_line(self, tmp_path):
        report = synthetic_power_law_report()
        one = BenchmarkReport(
            report.detail_rows[:1], {}, report.properties, []
        )
        files = render_plots(one, tmp_path)
        assert files  # plot still emitted, no crash without a fit


class TestCli:
    def test_list_systems(self, capsys):
        assert main(["list-systems"]) == 0
        out = capsys.readouterr().out
        assert "Lorenz63" in out
        assert len(out.strip().splitlines()) >= 10

    def test_simulate_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "traj.csv"
        code = main([
            "simulate", "Lorenz63", "--periods", "1",
            "--points-per-period", "50", "--noise", "1.0",
            "--seed", "3", "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,x1,x2,x3"
        assert len(lines) == 51

    def test_benchmark_and_analyze(self, tmp_path, capsys):
        config = tmp_path / "run.toml"
        out_dir = tmp_path / "out"
        config.write_text(
            'systems = ["Lorenz63"]\n'
            'optimizers = ["stlsq"]\n'
            "noise_percents = [0.0]\n"
            "grid_points = 10\n"
            "n_models = 2\n"
            "master_seed = 1\n"
            f'output_dir = "{out_dir}"\n'
        )
        assert main(["benchmark", "--config", str(config), "--quiet"]) == 0
        assert (out_dir / "details.csv").exists()
        assert (out_dir / "summary.json").exists()
        assert main(["analyze", "--report", str(out_dir)]) == 0
        assert list(out_dir.glob("*.svg"))

    def test_benchmark_bad_config_exit_code(self, tmp_path, capsys):
        config = tmp_path / "bad.toml"
        config.write_text("grid_points = -5\n")
        assert main(["benchmark", "--config", str(config)]) == 1

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["benchmark", "--config", str(tmp_path / "nope.toml")]) == 1
