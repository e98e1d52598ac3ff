"""Harness: config validation, determinism, skip handling, exit codes."""

import json

import pytest
import yaml

from erfapprox.cli import main
from erfapprox.errors import ConfigError
from erfapprox.harness import (
    CSV_COLUMNS,
    ExperimentConfig,
    run_partition_check,
    run_verify,
    write_csv,
)

BASE = {
    "schema_version": 1,
    "functions": [{"id": "linear", "builtin": "linear"}],
    "theorems": ["T12"],
    "sweep": [9, 16, 81],
    "rate_exponents": [0.5],
    "grid": {"x_points": 128, "refinement": False},
}


def cfg_with(**overrides) -> ExperimentConfig:
    doc = {**BASE, **overrides}
    return ExperimentConfig.from_dict(doc)


def write_config(tmp_path, doc, name="cfg.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(doc))
    return str(path)


class TestConfigValidation:
    def test_round_trip(self):
        cfg = cfg_with()
        assert cfg.sweep == (9, 16, 81)
        assert cfg.theorems == ("T12",)

    def test_missing_schema_version(self):
        with pytest.raises(ConfigError) as exc:
            ExperimentConfig.from_dict({k: v for k, v in BASE.items() if k != "schema_version"})
        assert exc.value.field == "schema_version"

    def test_unknown_theorem(self):
        with pytest.raises(ConfigError) as exc:
            cfg_with(theorems=["T99"])
        assert exc.value.field == "theorems"

    def test_duplicate_function_id(self):
        with pytest.raises(ConfigError):
            cfg_with(functions=[{"id": "a", "builtin": "sin"},
                                {"id": "a", "builtin": "cos"}])

    def test_function_needs_source(self):
        with pytest.raises(ConfigError):
            cfg_with(functions=[{"id": "a"}])

    def test_exponent_range(self):
        with pytest.raises(ConfigError):
            cfg_with(rate_exponents=[1.5])

    def test_missing_sweep(self):
        with pytest.raises(ConfigError) as exc:
            ExperimentConfig.from_dict({k: v for k, v in BASE.items() if k != "sweep"})
        assert exc.value.field == "sweep"


class TestRunVerify:
    def test_basic_run_holds(self):
        result = run_verify(cfg_with())
        assert len(result.rows) == 3
        assert result.violated == 0
        assert all(r["verdict"] == "holds" for r in result.rows)
        assert all(set(r) == set(CSV_COLUMNS) for r in result.rows)

    def test_empty_theorems_empty_report(self):
        result = run_verify(cfg_with(theorems=[]))
        assert result.rows == ()
        assert result.violated == 0

    def test_hypothesis_violation_skipped_not_crashed(self):
        result = run_verify(cfg_with(sweep=[4, 16]))
        assert len(result.rows) == 1              # only n=16 computed
        skipped = [s for s in result.skipped if s.get("n") == 4]
        assert skipped and "n^(1-exponent)" in skipped[0]["reason"]

    def test_incompatible_function_skipped(self):
        result = run_verify(cfg_with(
            functions=[{"id": "exp", "builtin": "exp"}], theorems=["T13"]))
        assert result.rows == ()
        assert any("variant" in s["reason"] for s in result.skipped)

    def test_rate_columns_filled_per_group(self):
        result = run_verify(cfg_with())
        slopes = {r["slope"] for r in result.rows}
        assert len(slopes) == 1
        assert all(r["r2"] is not None for r in result.rows)

    def test_expression_function(self):
        result = run_verify(cfg_with(functions=[{
            "id": "wave", "expr": "sin(2*x)", "domain": [0.0, 1.0],
        }]))
        assert len(result.rows) == 3
        assert all(r["verdict"] in ("holds", "inconclusive-estimated") for r in result.rows)

    def test_jobs_match_serial(self):
        serial = run_verify(cfg_with())
        doc = {**BASE}
        cfg = ExperimentConfig(**{**ExperimentConfig.from_dict(doc).__dict__, "jobs": 4})
        parallel = run_verify(cfg)
        assert serial.rows == parallel.rows


class TestDeterminism:
    def test_csv_byte_identical(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(run_verify(cfg_with()), str(p1))
        write_csv(run_verify(cfg_with()), str(p2))
        assert p1.read_bytes() == p2.read_bytes()

    def test_csv_header_fixed(self, tmp_path):
        p = tmp_path / "r.csv"
        write_csv(run_verify(cfg_with()), str(p))
        header = p.read_text().splitlines()[0]
        assert header == ",".join(CSV_COLUMNS)


class TestPartitionCheck:
    def test_defaults(self):
        summary = run_partition_check()
        assert summary["max_partition_deviation"] <= 1e-12
        assert summary["partition_ok"]
        assert summary["tail_strictly_below_bound"]
        assert summary["boundary_deficiency_min"] >= 0.2488

    def test_single_n(self):
        summary = run_partition_check(n_list=(1,), alpha_list=(0.5,), grid_points=2000)
        assert summary["max_partition_deviation"] <= 1e-12


class TestCli:
    def test_verify_exit_zero(self, tmp_path):
        path = write_config(tmp_path, BASE)
        out = tmp_path / "out.csv"
        assert main(["verify", "--config", path, "--out-csv", str(out)]) == 0
        assert out.exists()

    def test_config_error_exit_two(self, tmp_path):
        path = write_config(tmp_path, {**BASE, "theorems": ["T99"]})
        assert main(["verify", "--config", path]) == 2

    def test_missing_config_exit_two(self):
        assert main(["verify", "--config", "/no/such/file.yaml"]) == 2

    def test_check_partition_exit_zero(self):
        assert main(["check-partition"]) == 0

    def test_fractional_subcommand(self, tmp_path):
        doc = {**BASE, "functions": [{"id": "sq", "builtin": "sq"}],
               "theorems": ["T12", "C33"], "sweep": [9, 16],
               "grid": {"x_points": 64, "refinement": False,
                        "anchors": 9, "table_points": 129}}
        path = write_config(tmp_path, doc)
        out = tmp_path / "frac.json"
        assert main(["fractional", "--config", path, "--out-json", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert all(r["theorem"] == "C33" for r in doc["rows"])

    def test_rates_subcommand(self, tmp_path, capsys):
        path = write_config(tmp_path, BASE)
        assert main(["rates", "--config", path]) == 0
        assert "slope=" in capsys.readouterr().out
