"""Command-line interface: subcommands, config handling and exit codes."""

import json

import numpy as np
import pytest

from fraclab.cli import main
from fraclab.funcspace import GridFunction, write_grid_csv


@pytest.fixture
def const_csv(tmp_path):
    t = np.linspace(0.0, 1.0, 257)
    path = tmp_path / "one.csv"
    write_grid_csv(GridFunction(t, np.ones((257, 1))), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstants:
    def test_reference_values(self, capsys):
        code, out, _ = run(capsys, "constants", "--alpha", "0.25", "--p", "2")
        assert code == 0
        assert "weak_type_K,0.25,2,1.31200779" in out
        assert "strong_type_C,0.25,2,4.13605635" in out

    def test_p_one_skips_strong(self, capsys):
        code, out, _ = run(capsys, "constants", "--alpha", "0.5", "--p", "1")
        assert code == 0
        assert "weak_type_K,0.5,1,1.59576912" in out
        assert "strong_type_C" not in out

    def test_invalid_regime_exits_two(self, capsys):
        code, _, err = run(capsys, "constants", "--alpha", "0.5", "--p", "2")
        assert code == 2
        assert "error:" in err


class TestIntegrate:
    def test_constant_input(self, capsys, const_csv):
        # J^0.5[1](1) = 1/Gamma(1.5) = 2/sqrt(pi)
        code, out, _ = run(capsys, "integrate", "--alpha", "0.5",
                           "--input", const_csv)
        assert code == 0
        last = out.strip().splitlines()[-1].split(",")
        assert float(last[0]) == pytest.approx(1.0)
        # output is rounded to 9 significant digits
        assert float(last[1]) == pytest.approx(1.1283791670955126, rel=1e-8)

    def test_nine_significant_digits(self, capsys, const_csv):
        _, out, _ = run(capsys, "integrate", "--alpha", "0.5",
                        "--input", const_csv)
        assert "1.12837917" in out.strip().splitlines()[-1]

    def test_out_file(self, capsys, const_csv, tmp_path):
        dest = tmp_path / "img.csv"
        code, out, _ = run(capsys, "integrate", "--alpha", "0.5",
                           "--input", const_csv, "--out", str(dest))
        assert code == 0 and f"wrote {dest}" in out
        assert dest.read_text().splitlines()[0] == "t,v1"

    def test_missing_input_exits_two(self, capsys):
        code, _, err = run(capsys, "integrate", "--alpha", "0.5",
                           "--input", "/nonexistent.csv")
        assert code == 2 and "error:" in err


class TestDerive:
    def test_caputo_roundtrip(self, capsys, const_csv, tmp_path):
        code, out, _ = run(capsys, "derive", "--alpha", "0.5",
                           "--kind", "caputo", "--input", const_csv)
        assert code == 0
        last = out.strip().splitlines()[-1].split(",")
        assert float(last[1]) == pytest.approx(0.0, abs=1e-12)


class TestNorms:
    def test_table_shape(self, capsys, const_csv):
        code, out, _ = run(capsys, "norms", "--input", const_csv,
                           "--p", "1", "2", "inf", "--levels", "4")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "quantity,parameter,value"
        kinds = [ln.split(",")[0] for ln in lines[1:]]
        assert kinds.count("lp_norm") == 3
        assert kinds.count("weak_lp") == 2      # no weak sup-norm
        assert kinds.count("distribution") == 4
        row = next(ln for ln in lines if ln.startswith("lp_norm,2"))
        assert float(row.split(",")[2]) == pytest.approx(1.0, rel=1e-12)


class TestVerify:
    def test_weak_sweep_holds(self, capsys):
        code, out, _ = run(capsys, "verify", "--mode", "weak",
                           "--alpha", "0.25", "--p", "2", "--cases", "20",
                           "--mesh", "65")
        assert code == 0
        assert "20/20 inequalities hold" in out

    def test_report_file(self, capsys, tmp_path):
        dest = tmp_path / "reports.json"
        code, _, _ = run(capsys, "verify", "--mode", "into-itself",
                         "--alpha", "0.5", "--p", "2", "--cases", "5",
                         "--mesh", "33", "--out", str(dest))
        assert code == 0
        reports = json.loads(dest.read_text())
        assert len(reports) == 5
        assert all(r["holds"] for r in reports)

    def test_supercritical_exits_two(self, capsys):
        code, _, err = run(capsys, "verify", "--mode", "strong",
                           "--alpha", "0.25", "--p", "2", "--q", "5",
                           "--cases", "2", "--mesh", "33")
        assert code == 2 and "error:" in err


class TestCounterexample:
    def test_probe_output(self, capsys, tmp_path):
        dest = tmp_path / "probe.csv"
        code, out, _ = run(capsys, "counterexample",
                           "--case", "bounded_super_finite",
                           "--alpha", "0.25", "--p", "2", "--eta", "8",
                           "--out", str(dest))
        assert code == 0
        assert "beta_eta = 0.4375" in out
        assert "route power_origin" in out
        header = dest.read_text().splitlines()[0]
        assert header == ("eps,truncated_norm_power,log_eps,log_N,"
                          "fitted_slope,theoretical_exponent")

    def test_inf_eta_accepted(self, capsys):
        code, out, _ = run(capsys, "counterexample",
                           "--case", "bounded_super_inf",
                           "--alpha", "0.25", "--p", "2", "--eta", "inf")
        assert code == 0

    def test_bad_beta_exits_two(self, capsys):
        code, _, err = run(capsys, "counterexample",
                           "--case", "bounded_super_finite",
                           "--alpha", "0.25", "--p", "2", "--eta", "8",
                           "--beta", "0.9")
        assert code == 2 and "error:" in err


class TestCompact:
    def test_gap_json(self, capsys, tmp_path):
        dest = tmp_path / "gap.json"
        code, out, _ = run(capsys, "compact", "--mode", "gap",
                           "--alpha", "0.25", "--p", "2",
                           "--n", "4", "--m", "1", "--out", str(dest))
        assert code == 0
        data = json.loads(dest.read_text())
        assert data["bound"] == pytest.approx(0.5516313, rel=1e-6)
        assert data["measured"] >= data["bound"]
        assert "bound 0.551631" in out

    def test_gap_requires_indices(self, capsys):
        code, _, err = run(capsys, "compact", "--mode", "gap",
                           "--alpha", "0.25", "--p", "2")
        assert code == 2 and "error:" in err

    def test_simon_verdict(self, capsys):
        code, out, _ = run(capsys, "compact", "--mode", "simon",
                           "--alpha", "0.25", "--p", "2", "--q", "3",
                           "--members", "4", "--mesh", "257", "--h-num", "6")
        assert code == 0
        assert "decay verdict: True" in out


class TestConfigHandling:
    def test_config_fills_flags(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"alpha": 0.25, "p": 2.0}))
        code, out, _ = run(capsys, "constants", "--config", str(cfg))
        assert code == 0
        assert "weak_type_K,0.25,2,1.31200779" in out

    def test_flag_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"alpha": 0.25, "p": 2.0}))
        code, out, _ = run(capsys, "constants", "--config", str(cfg),
                           "--alpha", "0.1")
        assert code == 0
        assert "weak_type_K,0.1,2," in out
        assert "weak_type_K,0.25" not in out

    def test_unknown_config_key_exits_two(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"alpha": 0.25, "p": 2.0, "bogus": 1}))
        code, _, err = run(capsys, "constants", "--config", str(cfg))
        assert code == 2 and "bogus" in err

    def test_invalid_json_exits_two(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        code, _, err = run(capsys, "constants", "--config", str(cfg))
        assert code == 2 and "invalid JSON" in err

    def test_small_mesh_exits_two(self, capsys):
        code, _, err = run(capsys, "verify", "--mode", "weak",
                           "--alpha", "0.25", "--p", "2", "--mesh", "5")
        assert code == 2 and "mesh" in err

    def test_determinism(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"alpha": 0.25, "p": 2.0, "cases": 10,
                                   "mesh": 33, "seed": 7}))
        outs = []
        for _ in range(2):
            code, out, _ = run(capsys, "verify", "--mode", "weak",
                               "--config", str(cfg))
            assert code == 0
            outs.append(out)
        assert outs[0] == outs[1]
