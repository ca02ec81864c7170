import json
import math

import pytest

from exorder import (
    ConfigError,
    ExperimentConfig,
    Report,
    build_baseline,
    run_experiment,
)
from exorder.cli import main
from exorder.distributions import Exponential, Uniform, Weibull

FULL_CONFIG = {
    "rates": [1.0, 2.0, 3.0],
    "checks": ["st", "disp", "star", "si", "pqd", "tau", "corr", "phr", "copula-free"],
    "master_seed": 424242,
    "i": 1,
    "j": 3,
    "monte_carlo_m": 20000,
    "copula_resolution": 30,
    "baseline": {"name": "weibull", "shape": 2.0},
}


def write_config(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


class TestConfigParsing:
    def test_full_round_trip(self):
        cfg = ExperimentConfig.from_dict(FULL_CONFIG)
        assert cfg.rates == (1.0, 2.0, 3.0)
        assert cfg.j == 3 and cfg.monte_carlo_m == 20000
        again = ExperimentConfig.from_dict(cfg.to_dict())
        assert again == cfg

    def test_minimal(self):
        cfg = ExperimentConfig.from_json(
            '{"rates": [1, 2], "checks": ["corr"], "master_seed": 7, "j": 2}'
        )
        assert cfg.grid_points == 199 and cfg.pq_points == 19
        assert cfg.tolerances == {}

    @pytest.mark.parametrize(
        "payload,fragment",
        [
            ({"checks": ["st"], "master_seed": 1, "j": 2}, "rates"),
            ({"rates": [1, 2], "checks": ["st"], "j": 2}, "master_seed"),
            ({"rates": [1, 2], "checks": [], "master_seed": 1}, "checks"),
            ({"rates": [1, 2], "checks": ["nope"], "master_seed": 1}, "unknown check"),
            ({"rates": [1, -2], "checks": ["st"], "master_seed": 1, "j": 2}, r"rates\[1\]"),
            ({"rates": [1], "checks": ["st"], "master_seed": 1, "j": 2}, "two entries"),
            ({"rates": [1, 2], "checks": ["st"], "master_seed": 1, "j": 2, "oops": 1}, "oops"),
            ({"rates": [1, 2], "checks": ["st"], "master_seed": 1}, "required by check"),
            ({"rates": [1, 2], "checks": ["disp"], "master_seed": 1, "i": 2, "j": 2}, "i < j"),
            ({"rates": [1, 2], "checks": ["si"], "master_seed": 1, "j": 1}, "j >= 2"),
            ({"rates": [1, 2], "checks": ["st"], "master_seed": 1, "j": 5}, "at most"),
            ({"rates": [1, 2], "checks": ["phr"], "master_seed": 1, "j": 2}, "baseline"),
            ({"rates": [1, 2], "checks": ["st"], "master_seed": True, "j": 2}, "integer"),
            (
                {"rates": [1, 2], "checks": ["corr"], "master_seed": 1, "j": 2,
                 "tolerances": {"bogus": 0.1}},
                "unknown check",
            ),
        ],
    )
    def test_rejections_name_the_field(self, payload, fragment):
        with pytest.raises(ConfigError, match=fragment):
            ExperimentConfig.from_dict(payload)

    def test_invalid_json(self):
        with pytest.raises(ConfigError, match="not valid JSON"):
            ExperimentConfig.from_json("{nope")

    def test_tolerance_lookup(self):
        cfg = ExperimentConfig.from_dict(
            {"rates": [1, 2], "checks": ["disp"], "master_seed": 1, "j": 2,
             "tolerances": {"disp": 0.5}}
        )
        assert cfg.tolerance_for("disp", 1e-9) == 0.5
        assert cfg.tolerance_for("star", 1e-9) == 1e-9


class TestBaselines:
    def test_known_families(self):
        assert isinstance(build_baseline({"name": "exponential", "rate": 2.0}), Exponential)
        assert isinstance(build_baseline({"name": "weibull", "shape": 2.0}), Weibull)
        assert isinstance(
            build_baseline({"name": "uniform", "lower": 0.0, "upper": 2.0}), Uniform
        )

    @pytest.mark.parametrize(
        "spec,fragment",
        [
            ({"name": "cauchy"}, "baseline.name"),
            ({"name": "weibull"}, "shape"),
            ({"name": "weibull", "shape": 2.0, "rate": 1.0}, "unknown parameter"),
            ({"name": "exponential", "rate": -1.0}, "baseline"),
        ],
    )
    def test_rejections(self, spec, fragment):
        with pytest.raises(ConfigError, match=fragment):
            build_baseline(spec)


@pytest.fixture(scope="module")
def report():
    return run_experiment(ExperimentConfig.from_dict(FULL_CONFIG))


class TestRunExperiment:
    def test_all_checks_pass(self, report):
        assert report.passed and report.failed_checks == []
        assert list(report.results) == list(FULL_CONFIG["checks"])

    def test_report_echoes_config_and_provenance(self, report):
        assert report.config == ExperimentConfig.from_dict(FULL_CONFIG).to_dict()
        assert report.provenance["package"] == "exorder"
        assert report.provenance["master_seed"] == 424242
        assert report.provenance["grid"] == "u:199/200;pq:19/20"

    def test_deterministic(self, report):
        again = run_experiment(ExperimentConfig.from_dict(FULL_CONFIG))
        assert again.canonical() == report.canonical()
        assert again.timing_seconds > 0

    def test_corr_values(self, report):
        corr = report.results["corr"]
        assert corr["heterogeneous"] == pytest.approx(0.17865690353216127, abs=1e-14)
        assert corr["homogeneous"] == pytest.approx(2 / 7, abs=1e-14)

    def test_exact_checks_have_zero_violation(self, report):
        for check in ("st", "disp", "star", "si"):
            assert report.results[check]["max_violation"] == 0.0

    def test_json_round_trip(self, report):
        again = Report.from_json(report.to_json())
        assert again.canonical() == report.canonical()

    def test_homogeneous_rates_are_fixed_points(self):
        cfg = ExperimentConfig.from_dict(
            {"rates": [2.0, 2.0, 2.0], "checks": ["st", "disp", "star", "si", "corr"],
             "master_seed": 5, "j": 2}
        )
        report = run_experiment(cfg)
        assert report.passed
        for check in ("st", "disp", "star", "si"):
            assert report.results[check]["max_violation"] == 0.0
        corr = report.results["corr"]
        assert corr["heterogeneous"] == pytest.approx(corr["homogeneous"], abs=1e-14)


class TestCliVerify:
    def test_pass_run(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {"rates": [1.0, 2.0], "checks": ["disp", "corr"], "master_seed": 3, "j": 2},
        )
        out = tmp_path / "report.json"
        code = main(["verify", "--config", str(cfg), "--out", str(out)])
        captured = capsys.readouterr()
        assert code == 0
        assert "check disp: holds" in captured.err
        assert "check corr: holds" in captured.err
        report = Report.from_json(out.read_text(encoding="utf-8"))
        assert report.passed

    def test_report_to_stdout_when_no_out(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, {"rates": [1.0, 2.0], "checks": ["corr"], "master_seed": 3, "j": 2}
        )
        code = main(["verify", "--config", str(cfg)])
        captured = capsys.readouterr()
        assert code == 0
        assert json.loads(captured.out)["passed"] is True

    def test_failing_tolerance_exits_one(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {"rates": [1.0, 2.0], "checks": ["disp"], "master_seed": 3, "j": 2},
        )
        code = main(["verify", "--config", str(cfg), "--tolerance", "-1.0"])
        captured = capsys.readouterr()
        assert code == 1
        assert "check disp: FAILED" in captured.err
        assert "FAIL: disp" in captured.err

    def test_config_error_exits_two(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"rates": [1.0, 2.0], "checks": ["disp"], "j": 2})
        code = main(["verify", "--config", str(cfg)])
        captured = capsys.readouterr()
        assert code == 2
        assert "config error" in captured.err
        assert "master_seed" in captured.err

    def test_missing_file_exits_two(self, tmp_path, capsys):
        code = main(["verify", "--config", str(tmp_path / "absent.json")])
        assert code == 2
        assert "cannot read config file" in capsys.readouterr().err

    def test_seed_override_changes_monte_carlo(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {"rates": [1.0, 2.0, 3.0], "checks": ["tau"], "master_seed": 3, "j": 2,
             "monte_carlo_m": 20000},
        )
        outcomes = []
        for seed in ("3", "4"):
            code = main(["verify", "--config", str(cfg), "--seed", seed])
            assert code == 0
            outcomes.append(json.loads(capsys.readouterr().out)["results"]["tau"]["empirical"])
        assert outcomes[0] != outcomes[1]


class TestCliCurves:
    def test_writes_expected_files(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            {"rates": [1.0, 2.0, 3.0], "checks": ["st", "disp", "star", "si", "pqd", "corr"],
             "master_seed": 9, "j": 2, "monte_carlo_m": 10000, "copula_resolution": 20},
        )
        out_dir = tmp_path / "curves"
        code = main(["curves", "--config", str(cfg), "--out", str(out_dir)])
        captured = capsys.readouterr()
        assert code == 0
        names = sorted(p.name for p in out_dir.iterdir())
        assert names == ["disp.csv", "pqd.csv", "si.csv", "st.csv", "star.csv"]
        assert "corr" not in captured.out  # no curve for scalar checks

        disp = (out_dir / "disp.csv").read_text(encoding="utf-8").splitlines()
        assert disp[0] == "u,quantile_homogeneous,quantile_heterogeneous,delta"
        deltas = [float(row.split(",")[3]) for row in disp[1:]]
        assert all(b >= a - 1e-12 for a, b in zip(deltas, deltas[1:]))

        st = (out_dir / "st.csv").read_text(encoding="utf-8").splitlines()
        assert st[0] == "x,cdf_homogeneous,cdf_heterogeneous,excess"
        assert all(float(row.split(",")[3]) >= -1e-12 for row in st[1:])

        si = (out_dir / "si.csv").read_text(encoding="utf-8").splitlines()
        assert si[0] == "p,q,u,comp_homogeneous,comp_heterogeneous"

        pqd = (out_dir / "pqd.csv").read_text(encoding="utf-8").splitlines()
        assert pqd[0] == "u,v,copula_heterogeneous,copula_homogeneous,difference"
        assert len(pqd) == 1 + 20 * 20


class TestCliTau:
    def test_single_value(self, capsys):
        assert main(["tau", "--n", "5", "--i", "2"]) == 0
        out = capsys.readouterr().out.strip()
        assert float(out) == pytest.approx(4 / 9, abs=1e-12)

    def test_table(self, capsys):
        assert main(["tau", "--n", "3"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "n=3 i=2 tau=0.4"
        assert lines[1] == "n=3 i=3 tau=0.2"

    def test_bad_n(self, capsys):
        assert main(["tau", "--n", "1"]) == 2

    def test_bad_i_range(self, capsys):
        assert main(["tau", "--n", "3", "--i", "9"]) == 2
        assert "error" in capsys.readouterr().err


class TestCliSelftest:
    def test_passes_and_reports(self, capsys):
        code = main(["selftest", "--seed", "11", "--max-n", "5", "--instances", "12"])
        captured = capsys.readouterr()
        assert code == 0
        payload = json.loads(captured.out)
        assert payload["passed"] is True
        assert payload["instances"] == 12
        assert payload["max_spacing_gap"] <= 1e-12

    def test_invalid_max_n(self, capsys):
        assert main(["selftest", "--seed", "11", "--max-n", "40"]) == 2
