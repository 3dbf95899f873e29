import json
import math

import pytest

from tailbound import BennettBound, HoeffdingBound
from tailbound.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBoundCommand:
    def test_classical_hoeffding_value(self, capsys):
        code, out, _ = run(capsys, "bound", "--family", "hoeffding",
                           "--dist", "uniform", "--params", "lo=0,hi=1",
                           "--n", "40", "--t", "10", "--p", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("family,t,p,bound")
        row = lines[1].split(",")
        assert row[0] == "hoeffding"
        assert float(row[3]) == pytest.approx(math.exp(-5.0), rel=1e-15)

    def test_json_records_round_trip(self, capsys, tmp_path):
        out_path = tmp_path / "records.json"
        code, _, _ = run(capsys, "bound", "--family", "both",
                         "--dist", "uniform", "--n", "5", "--t", "0.5,1.0",
                         "--p", "2,3", "--format", "json",
                         "--output", str(out_path))
        assert code == 0
        records = json.loads(out_path.read_text())
        hoeff = [r for r in records if r["family"] == "hoeffding"]
        benn = [r for r in records if r["family"] == "bennett"]
        assert len(hoeff) == len(benn) == 4
        # both families share the threshold grid
        assert sorted({r["t"] for r in hoeff}) == sorted({r["t"] for r in benn})
        for r in hoeff:
            HoeffdingBound.from_json_dict(r)
        for r in benn:
            parsed = BennettBound.from_json_dict(r)
            assert parsed.y_star == r["y_star"]
            assert "residual" in r

    def test_per_var_thresholds(self, capsys):
        code, out, _ = run(capsys, "bound", "--dist", "uniform", "--n", "40",
                           "--t", "0.25", "--p", "1", "--per-var")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[1]) == 10.0  # absolute t recorded
        assert float(row[3]) == pytest.approx(math.exp(-5.0), rel=1e-15)

    def test_two_sided_flag(self, capsys):
        code, out, _ = run(capsys, "bound", "--dist", "uniform", "--n", "10",
                           "--t", "2.0", "--p", "2", "--two-sided")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert row[4] == "two_sided"

    def test_inline_moments(self, capsys):
        code, out, _ = run(capsys, "bound", "--mu", "0.5,0.3333333333333333",
                           "--support", "0,1", "--n", "4", "--t", "1.0",
                           "--p", "2")
        assert code == 0

    def test_infeasible_moments_exit_code(self, capsys):
        code, _, err = run(capsys, "bound", "--mu", "0.5,0.6",
                           "--support", "0,1", "--n", "2", "--t", "1.0",
                           "--p", "2")
        assert code == 3
        assert "chain" in err

    def test_bennett_needs_order_two(self, capsys):
        code, _, _ = run(capsys, "bound", "--family", "bennett",
                         "--dist", "uniform", "--n", "2", "--t", "0.5",
                         "--p", "1,2")
        assert code == 2

    def test_unknown_distribution(self, capsys):
        code, _, err = run(capsys, "bound", "--dist", "zipf", "--n", "2",
                           "--t", "0.5", "--p", "1")
        assert code == 2
        assert "unknown distribution" in err


class TestCompareCommand:
    def test_limit_curve_ratio_monotone(self, capsys):
        code, out, _ = run(capsys, "compare", "--dist", "uniform", "--n", "40",
                           "--t", "0.1:0.4:10", "--limit", "--per-var")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,classical_bound,new_bound,ratio"
        ratios = [float(line.split(",")[3]) for line in lines[1:]]
        assert all(r >= 1.0 for r in ratios)
        assert all(b > a for a, b in zip(ratios, ratios[1:]))

    def test_finite_order_target(self, capsys):
        code, out, _ = run(capsys, "compare", "--dist", "uniform", "--n", "10",
                           "--t", "1.0,2.0", "--p", "3")
        assert code == 0
        for line in out.strip().splitlines()[1:]:
            t, classical, new, ratio = map(float, line.split(","))
            assert ratio == pytest.approx(classical / new, rel=1e-12)
            assert ratio >= 1.0

    def test_order_one_target_is_flat(self, capsys):
        code, out, _ = run(capsys, "compare", "--dist", "uniform", "--n", "10",
                           "--t", "1.0,2.0", "--p", "1")
        assert code == 0
        for line in out.strip().splitlines()[1:]:
            assert float(line.split(",")[3]) == 1.0

    def test_requires_exactly_one_target(self, capsys):
        code, _, _ = run(capsys, "compare", "--dist", "uniform", "--n", "5",
                         "--t", "1.0")
        assert code == 2


class TestSampleSizeCommand:
    def test_record_fields(self, capsys):
        code, out, _ = run(capsys, "sample-size", "--dist", "uniform",
                           "--t", "0.1", "--alpha", "0.05", "--p", "2",
                           "--format", "json")
        assert code == 0
        (record,) = json.loads(out)
        assert record["classical_n"] == math.ceil(math.log(2 / 0.05) / 0.02)
        assert record["n"] <= record["classical_n"]
        assert 0 < record["c_bar"] < 1

    def test_order_one_is_classical(self, capsys):
        code, out, _ = run(capsys, "sample-size", "--dist", "uniform",
                           "--t", "0.1", "--alpha", "0.05", "--p", "1",
                           "--format", "json")
        assert code == 0
        (record,) = json.loads(out)
        assert record["n"] == record["classical_n"]


class TestMomentsCommand:
    def test_from_data_file(self, capsys, tmp_path):
        data = tmp_path / "values.txt"
        data.write_text("0.0\n1.0\n")
        code, out, _ = run(capsys, "moments", "--data", str(data),
                           "--support", "0,1", "--p", "2", "--format", "json")
        assert code == 0
        (record,) = json.loads(out)
        assert record["mu"] == [0.5, 0.5]
        assert record["support"] == {"lower": 0.0, "upper": 1.0}

    def test_from_csv_with_ids(self, capsys, tmp_path):
        data = tmp_path / "values.csv"
        data.write_text("id,value\n1,0.25\n2,0.75\n")
        code, out, _ = run(capsys, "moments", "--data", str(data),
                           "--support", "0,1", "--p", "1", "--format", "json")
        assert code == 0
        (record,) = json.loads(out)
        assert record["mu"] == [0.5]

    def test_analytic_csv_output(self, capsys):
        code, out, _ = run(capsys, "moments", "--dist", "uniform", "--p", "3")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k,value"
        assert float(lines[1].split(",")[1]) == 0.5

    def test_datum_outside_support(self, capsys, tmp_path):
        data = tmp_path / "values.txt"
        data.write_text("0.5\n1.5\n")
        code, _, err = run(capsys, "moments", "--data", str(data),
                           "--support", "0,1", "--p", "2")
        assert code == 2
        assert "index 1" in err


class TestVerifyCommand:
    def test_smoke_grid_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--dist", "uniform", "--n", "10",
                           "--t", "1.0,2.0", "--p", "1,2",
                           "--trials", "20000", "--seed", "42")
        assert code == 0
        assert "verify: PASS" in out
        assert out.count("ok") >= 4

    def test_zero_threshold_rejected_before_sampling(self, capsys):
        code, _, err = run(capsys, "verify", "--dist", "uniform", "--n", "5",
                           "--t", "0.0,1.0", "--p", "1", "--trials", "20000")
        assert code == 2
        assert "positive" in err

    def test_seed_fixed_rerun_is_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for path in (a, b):
            code, _, _ = run(capsys, "verify", "--dist", "bernoulli",
                             "--params", "q=0.3", "--n", "8", "--t", "1.0",
                             "--p", "2", "--trials", "20000", "--seed", "7",
                             "--output", str(path))
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_env_seed_override(self, capsys, monkeypatch):
        monkeypatch.setenv("TAILBOUND_SEED", "12345")
        code, out, _ = run(capsys, "verify", "--dist", "uniform", "--n", "4",
                           "--t", "0.5", "--p", "1", "--trials", "20000",
                           "--seed", "1")
        assert code == 0
        assert "seed=12345" in out

    def test_bennett_family(self, capsys):
        code, out, _ = run(capsys, "verify", "--family", "bennett",
                           "--dist", "truncexp", "--params", "b=1,rate=1",
                           "--n", "10", "--t", "2.0", "--p", "2,3",
                           "--trials", "20000", "--seed", "3")
        assert code == 0
        assert "verify: PASS" in out


class TestConfigFile:
    def test_config_provides_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("dist=uniform\nn=40\nt=10\np=1\n")
        code, out, _ = run(capsys, "bound", "--config", str(cfg))
        assert code == 0
        assert float(out.strip().splitlines()[1].split(",")[3]) \
            == pytest.approx(math.exp(-5.0), rel=1e-15)

    def test_cli_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("dist=uniform\nn=40\nt=10\np=1\n")
        code, out, _ = run(capsys, "bound", "--config", str(cfg), "--n", "10")
        assert code == 0
        assert float(out.strip().splitlines()[1].split(",")[3]) \
            == pytest.approx(math.exp(-2 * 100 / 10), rel=1e-13)

    def test_boolean_keys(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("dist=uniform\nn=40\nt=0.25\np=1\nper_var=true\n")
        code, out, _ = run(capsys, "bound", "--config", str(cfg))
        assert code == 0
        assert float(out.strip().splitlines()[1].split(",")[1]) == 10.0

    def test_missing_config_file(self, capsys):
        code, _, err = run(capsys, "bound", "--config", "/no/such/file",
                           "--t", "1")
        assert code == 2
        assert "config" in err.lower()


class TestOutputFormats:
    def test_csv_uses_17_significant_digits(self, capsys):
        code, out, _ = run(capsys, "bound", "--dist", "uniform", "--n", "3",
                           "--t", "0.7", "--p", "2")
        assert code == 0
        bound_text = out.strip().splitlines()[1].split(",")[3]
        assert float(bound_text) == float(format(float(bound_text), ".17g"))
        assert len(bound_text.replace(".", "").replace("-", "").lstrip("0")) >= 16

    def test_csv_no_trailing_whitespace(self, capsys):
        code, out, _ = run(capsys, "bound", "--dist", "uniform", "--n", "2",
                           "--t", "0.5", "--p", "1")
        assert code == 0
        for line in out.splitlines():
            assert line == line.strip()
