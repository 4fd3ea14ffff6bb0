import json
import math
import os

import pytest

from chebdyn.cli import main
from chebdyn.heights import ConvergenceRow
from chebdyn.serialize import records_from_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPoly:
    def test_chebyshev(self, capsys):
        code, out, _ = run_cli(capsys, "poly", "--family", "P", "--m", "3")
        assert code == 0 and out.strip() == "z^3 - 3*z"

    def test_q_family(self, capsys):
        code, out, _ = run_cli(capsys, "poly", "--family", "Q", "--m", "4")
        assert code == 0 and out.strip() == "z^4 + 4*z^2 + 2"

    def test_real_cyclotomic(self, capsys):
        code, out, _ = run_cli(capsys, "poly", "--real-cyclotomic", "12")
        assert code == 0 and out.strip() == "z^2 - 3"

    def test_conjugate(self, capsys):
        code, out, _ = run_cli(capsys, "poly", "--conjugate", "4", "--family", "Q")
        assert code == 0 and out.strip() == "z^2 + 4"

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["poly"])
        assert exc.value.code == 2

    def test_unknown_option_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["poly", "--m", "3", "--frobnicate"])
        assert exc.value.code == 2

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "poly", "--m", "0")
        assert code == 1 and "error:" in err


class TestHeight:
    def test_closed(self, capsys):
        code, out, _ = run_cli(capsys, "height", "--alpha", "5/2", "--method", "closed")
        assert code == 0
        assert out.strip() == f"closed {math.log(2):.12g}"

    def test_iterative(self, capsys):
        code, out, _ = run_cli(capsys, "height", "--alpha", "3", "--method", "iterative")
        assert code == 0 and out.startswith("iterative 0.962423650119")

    def test_nonarch(self, capsys):
        code, out, _ = run_cli(
            capsys, "height", "--alpha", "3/4", "--method", "nonarch", "--prime", "2"
        )
        assert code == 0
        assert out.strip() == f"nonarch {2 * math.log(2):.12g}"

    def test_nonarch_needs_prime(self, capsys):
        code, _, err = run_cli(capsys, "height", "--alpha", "3/4", "--method", "nonarch")
        assert code == 1 and "prime" in err

    def test_global(self, capsys):
        code, out, _ = run_cli(capsys, "height", "--alpha", "5/2", "--method", "global")
        assert code == 0
        value = float(out.split()[1])
        assert value == pytest.approx(2 * math.log(2), abs=1e-9)

    def test_bad_rational(self, capsys):
        code, _, err = run_cli(capsys, "height", "--alpha", "abc")
        assert code == 1 and "error:" in err


class TestAverage:
    def test_galois_mode(self, capsys):
        code, out, _ = run_cli(capsys, "average", "--n", "5", "--alpha", "3")
        assert code == 0
        assert float(out.split()[1]) == pytest.approx(math.log(11) / 2, abs=1e-9)

    def test_finite_place(self, capsys):
        code, out, _ = run_cli(
            capsys, "average", "--n", "12", "--alpha", "3", "--place", "2"
        )
        assert code == 0
        assert float(out.split()[1]) == pytest.approx(-math.log(2) / 2, abs=1e-9)

    def test_function_mode(self, capsys):
        code, out, _ = run_cli(capsys, "average", "--n", "101", "--function", "x^2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("average ") and lines[1].startswith("integral ")

    def test_needs_a_mode(self, capsys):
        code, _, err = run_cli(capsys, "average", "--n", "5")
        assert code == 1


class TestConverge:
    def test_csv_stdout(self, capsys):
        code, out, _ = run_cli(
            capsys, "converge", "--alpha", "3", "--place", "inf", "--n-min", "5", "--n-max", "7"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "N,degree,average,target,error"
        assert len(lines) == 4
        assert lines[1].startswith("5,2,1.1989476364,")

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "converge", "--alpha", "3", "--place", "inf", "--n-max", "12", "--format", "json",
        )
        assert code == 0
        rows = records_from_json(out, ConvergenceRow)
        assert [r.N for r in rows] == list(range(1, 13))

    def test_output_file_and_plot(self, tmp_path, capsys):
        out_file = tmp_path / "rows.csv"
        png = tmp_path / "rows.png"
        code, _, _ = run_cli(
            capsys,
            "converge", "--alpha", "3", "--place", "inf", "--n-max", "30",
            "--output", str(out_file), "--plot", str(png),
        )
        assert code == 0
        assert out_file.read_text().startswith("N,degree,average,target,error")
        assert png.stat().st_size > 0


class TestScan:
    def test_csv_contains_integral_orbit(self, capsys):
        code, out, err = run_cli(
            capsys, "scan", "--alpha", "3", "--s", "inf,11", "--nmax", "20", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "N,a,degree,resultant,verdict,offending,note"
        assert any(line.startswith("5,1,2,11,true") for line in lines)
        assert "integral orbits" in err

    def test_missing_archimedean_place(self, capsys):
        code, _, err = run_cli(capsys, "scan", "--alpha", "3", "--s", "11", "--nmax", "5")
        assert code == 1 and "inf" in err

    def test_preperiodic_alpha(self, capsys):
        code, _, err = run_cli(capsys, "scan", "--alpha", "0", "--s", "inf", "--nmax", "5")
        assert code == 1 and "preperiodic" in err

    def test_output_file_summary_on_stdout(self, tmp_path, capsys):
        out_file = tmp_path / "scan.csv"
        code, out, _ = run_cli(
            capsys,
            "scan", "--alpha", "1/2", "--s", "inf", "--nmax", "40", "--output", str(out_file),
        )
        assert code == 0
        assert "integral orbits" in out
        assert out_file.exists()


class TestCount:
    def test_single(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--n", "12", "--interval", "0,2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "count 1"
        assert lines[1] == "prediction 1"

    def test_sweep(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--nmax", "20", "--interval", "0,2")
        assert code == 0
        assert out.splitlines()[0] == "N,degree,count,prediction,deviation"

    def test_mode_exclusivity(self, capsys):
        code, _, err = run_cli(capsys, "count", "--interval", "0,2")
        assert code == 1


class TestProbe:
    def test_records_and_summary(self, capsys):
        code, out, err = run_cli(capsys, "probe", "--alpha", "1/2", "--nmax", "100")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "N,a,gap,record"
        assert lines[1].startswith("2,1,0.290215")
        assert "fitted exponent" in err


class TestCheck:
    def test_exact_zero(self, capsys):
        code, out, err = run_cli(capsys, "check", "--r", "6")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "place,log_value,exponents"
        assert "exact zero" in err

    def test_zero_rejected(self, capsys):
        code, _, err = run_cli(capsys, "check", "--r", "0")
        assert code == 1


class TestOutputDirEnv:
    def test_relative_paths_join_outdir(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("CHEBDYN_OUTDIR", str(tmp_path))
        code, _, _ = run_cli(
            capsys, "count", "--nmax", "10", "--interval", "0,2", "--output", "rows.csv"
        )
        assert code == 0
        assert (tmp_path / "rows.csv").exists()
