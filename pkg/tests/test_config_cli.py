import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from hammerstein.cli import main
from hammerstein.config import parse_measure, parse_plan, parse_problem
from hammerstein.errors import SpecificationError
from hammerstein.expressions import compile_expr, scalar
from tests.conftest import bundled


class TestExpressions:
    def test_caret_power(self):
        f = compile_expr("x^2 + 1", ("x",))
        assert float(f(np.array(3.0))) == 10.0

    def test_vectorized_broadcasting(self):
        f = compile_expr("t*u", ("t", "u"))
        out = f(np.array([1.0, 2.0]), np.array([3.0, 4.0]))
        np.testing.assert_allclose(out, [3.0, 8.0])

    def test_constant_expression_broadcasts(self):
        f = compile_expr("1/3", ("s",))
        out = f(np.linspace(0, 1, 5))
        np.testing.assert_allclose(out, 1.0 / 3.0)

    def test_positive_part(self):
        f = compile_expr("pos(1 - u)", ("u",))
        np.testing.assert_allclose(f(np.array([0.0, 2.0])), [1.0, 0.0])

    def test_unknown_name_rejected(self):
        with pytest.raises(SpecificationError):
            compile_expr("u + q", ("u",))

    def test_builtins_are_blocked(self):
        with pytest.raises(SpecificationError):
            compile_expr("__import__('os')", ("u",))

    def test_scalar_accepts_formulas(self):
        assert scalar("10^(-3/2)") == pytest.approx(10.0**-1.5)
        assert scalar(0.25) == 0.25
        with pytest.raises(SpecificationError):
            scalar(True)


class TestConfigParsing:
    def test_measure_with_expressions(self):
        m = parse_measure({"atoms": [{"t": "1/2", "w": "10^(-5/4)"}]})
        assert m.atoms[0][0] == 0.5
        assert m.atoms[0][1] == pytest.approx(10.0**-1.25)

    def test_empty_measure_is_zero(self):
        assert parse_measure(None).is_zero

    def test_bundled_reactor_roundtrip(self, reactor_problem):
        assert reactor_problem.kernel.name == "reactor"
        assert reactor_problem.c == pytest.approx(np.exp(-1.0 / 3.0))
        # f(0) = 0.9 * 2.2
        assert float(reactor_problem.f.f(np.array(0.0), np.array(0.0))) == pytest.approx(1.98)

    def test_plan_requires_checks(self):
        with pytest.raises(SpecificationError):
            parse_plan({"plan": {"checks": []}}, system=False)
        with pytest.raises(SpecificationError):
            parse_plan({}, system=False)

    def test_plan_measure_keys_validated(self):
        data = {"plan": {"checks": [
            {"kind": "index1", "rho1": 1.0, "rho2": 1.0,
             "measures": {"alpha_12": {}}}
        ]}}
        with pytest.raises(SpecificationError):
            parse_plan(data, system=True)

    def test_class_mismatch_rejected(self):
        config = bundled("thermostat")
        config["problem"]["kernel"]["class"] = "strongly_positive"
        with pytest.raises(SpecificationError):
            parse_problem(config)

    def test_custom_kernel_needs_gamma(self):
        config = {
            "problem": {
                "f": "u",
                "kernel": {
                    "expr": "1 - s", "phi": "1 - s", "c1": 0.5,
                    "class": "non_negative", "a": 0.0, "b": 0.5,
                },
            }
        }
        with pytest.raises(SpecificationError):
            parse_problem(config)

    def test_custom_kernel_with_gamma(self):
        config = {
            "problem": {
                "f": "u",
                "kernel": {
                    "expr": "(1 - s)*(1 + t)/2", "phi": "1 - s", "c1": 0.5,
                    "class": "non_negative", "a": 0.0, "b": 0.5,
                },
                "gamma": {"expr": "1 - t/2"},
            }
        }
        p = parse_problem(config)
        assert p.gamma.norm == pytest.approx(1.0, abs=1e-9)
        assert p.gamma.c2 == pytest.approx(0.75, abs=1e-8)


def run_cli(*argv):
    return main(list(argv))


class TestCli:
    def test_verify_with_bundled_plan(self, tmp_path):
        config = Path("src/hammerstein/configs/reactor.toml")
        out = tmp_path / "report.txt"
        code = run_cli("verify", "--config", str(config), "--out", str(out))
        assert code == 0
        text = out.read_text()
        assert "verdict = pass" in text
        assert "solutions = 1" in text

    def test_single_check_flags(self, tmp_path):
        config = Path("src/hammerstein/configs/reactor.toml")
        alpha = tmp_path / "alpha.toml"
        alpha.write_text('[alpha]\natoms = [{t = "1/2", w = "10^(-5/4)"}]\n')
        code = run_cli(
            "verify", "--config", str(config), "--check", "index1",
            "--rho", "2.12", "--alpha", str(alpha),
        )
        assert code == 0

    def test_reports_are_deterministic(self, tmp_path):
        config = Path("src/hammerstein/configs/beam.toml")
        out1, out2 = tmp_path / "r1.txt", tmp_path / "r2.txt"
        run_cli("verify", "--config", str(config), "--out", str(out1))
        run_cli("verify", "--config", str(config), "--out", str(out2))
        assert out1.read_bytes() == out2.read_bytes()

    def test_missing_plan_exits_2(self, tmp_path):
        config = tmp_path / "noplan.toml"
        config.write_text(
            '[problem]\nf = "u"\n[problem.kernel]\nbuiltin = "reactor"\nlam = 0.5\n'
        )
        assert run_cli("verify", "--config", str(config)) == 2

    def test_malformed_config_exits_2(self, tmp_path):
        config = tmp_path / "bad.toml"
        config.write_text("[problem\noops")
        assert run_cli("verify", "--config", str(config)) == 2

    def test_solve_writes_csv(self, tmp_path):
        config = Path("src/hammerstein/configs/reactor.toml")
        out = tmp_path / "profile.csv"
        code = run_cli(
            "solve", "--config", str(config), "--u0", "const:1.0",
            "--tol", "1e-10", "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "t,u"
        assert len(lines) == 258
        t0, u0 = lines[1].split(",")
        assert float(t0) == 0.0
        assert 0.071 <= float(u0) <= 2.12

    def test_transform_then_verify_system(self, tmp_path):
        config = Path("src/hammerstein/configs/elliptic.toml")
        out = tmp_path / "system.toml"
        assert run_cli("transform", "--config", str(config), "--out", str(out)) == 0
        report = tmp_path / "report.txt"
        code = run_cli("verify-system", "--config", str(out), "--out", str(report))
        assert code == 0
        text = report.read_text()
        assert text.count("verdict = pass") == 3
        assert "pattern = S3" in text

    def test_verify_system_accepts_elliptic_config(self, tmp_path):
        config = Path("src/hammerstein/configs/elliptic.toml")
        report = tmp_path / "report.txt"
        code = run_cli("verify-system", "--config", str(config), "--out", str(report))
        assert code == 0
        assert "solutions = 2" in report.read_text()

    def test_nonexist_command(self, tmp_path):
        config = Path("src/hammerstein/configs/nonexist_above.toml")
        code = run_cli("nonexist", "--config", str(config))
        assert code == 0
        below = Path("src/hammerstein/configs/nonexist_below.toml")
        assert run_cli("nonexist", "--config", str(below)) == 1

    def test_reproduce_unknown_exits_2(self):
        assert run_cli("reproduce", "nosuch") == 2

    def test_reproduce_reactor_reports_bullet_constants(self, tmp_path, capsys):
        out = tmp_path / "reactor.txt"
        assert run_cli("reproduce", "reactor", "--out", str(out)) == 0
        text = out.read_text()
        assert "main.alpha_gamma = 0.25394451746718427" in text
        assert "main.alpha_gamma = 0.14280349647732016" in text
        assert "main.inf_f" in text and "main.sup_f" in text
        assert "domination.margin" in text
        assert "solutions = 1" in text

    def test_reproduce_nonexist(self):
        assert run_cli("reproduce", "nonexist") == 0

    def test_reproduce_elliptic(self, tmp_path):
        out = tmp_path / "elliptic.txt"
        assert run_cli("reproduce", "elliptic", "--out", str(out)) == 0
        text = out.read_text()
        assert "m1 = " in text and "M2 = " in text
        assert "pattern = S3" in text
        assert "solutions = 2" in text

    def test_entry_point_installed(self):
        proc = subprocess.run(
            [sys.executable, "-m", "hammerstein.cli", "reproduce", "thermostat"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "verdict = pass" in proc.stdout
